// Copyright 2026 The rtmon Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RTMON_MODEL_HPP
#define RTMON_MODEL_HPP

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rtmon {

/// A uniquely identified participant. Compared by exact name.
struct Principal {
  std::string name;

  Principal() = default;
  explicit Principal(std::string n) : name(std::move(n)) {}

  auto operator<=>(const Principal&) const = default;
};

/// Spelling of the distinguished "any principal" symbol used by upper bounds.
/// It is rejected by every parser and never stored in a PolicyState.
inline constexpr std::string_view kTopName = "TOP";

inline Principal top_principal() { return Principal(std::string(kTopName)); }
inline bool is_top(const Principal& p) { return p.name == kTopName; }

struct RoleName {
  std::string name;

  RoleName() = default;
  explicit RoleName(std::string n) : name(std::move(n)) {}

  auto operator<=>(const RoleName&) const = default;
};

/// A principal-owned named set of principals, written Owner.name.
struct Role {
  Principal owner;
  RoleName name;

  Role() = default;
  Role(Principal o, RoleName n) : owner(std::move(o)), name(std::move(n)) {}
  Role(std::string o, std::string n)
      : owner(std::move(o)), name(std::move(n)) {}

  std::string str() const { return owner.name + "." + name.name; }

  auto operator<=>(const Role&) const = default;
};

using PrincipalSet = std::set<Principal>;
using RoleSet = std::set<Role>;
using MembershipMap = std::map<Role, PrincipalSet>;

/// Thrown when a value would break a model invariant (for example a linked
/// role whose first component is not owned by the statement head's owner).
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SimpleMember {
  Principal member;
};

struct SimpleInclusion {
  Role source;
};

/// Body A.r1.r2 stored as (A.r1, r2).
struct LinkingInclusion {
  Role first;
  RoleName second;
};

/// Body B1.r1 & ... & Bn.rn, n >= 2 distinct roles, source order kept.
struct IntersectionInclusion {
  std::vector<Role> parts;
};

using StatementBody = std::variant<SimpleMember, SimpleInclusion,
                                   LinkingInclusion, IntersectionInclusion>;

enum class StatementKind { kMember, kInclusion, kLinking, kIntersection };

/// One policy statement `head <- body`. Immutable value type; construct
/// through the named factories, which enforce the body invariants.
class Statement {
 public:
  static Statement member(Role head, Principal member);
  static Statement inclusion(Role head, Role source);
  static Statement linking(Role head, RoleName first, RoleName second);
  static Statement intersection(Role head, std::vector<Role> parts);

  const Role& head() const { return head_; }
  const StatementBody& body() const { return body_; }
  StatementKind kind() const {
    return static_cast<StatementKind>(body_.index());
  }

  /// Principals mentioned anywhere in the statement, head owner included.
  PrincipalSet principals() const;
  /// Role names mentioned anywhere in the statement.
  std::set<RoleName> role_names() const;

  /// Canonical text form, e.g. `A.r <- A.r1.r2`.
  std::string str() const;

  friend bool operator==(const Statement& a, const Statement& b) {
    return a.compare(b) == 0;
  }
  friend bool operator<(const Statement& a, const Statement& b) {
    return a.compare(b) < 0;
  }

 private:
  Statement(Role head, StatementBody body)
      : head_(std::move(head)), body_(std::move(body)) {}

  int compare(const Statement& other) const;

  Role head_;
  StatementBody body_;
};

/// A finite set of statements. All semantics are computed over this.
class PolicyState {
 public:
  using const_iterator = std::set<Statement>::const_iterator;

  PolicyState() = default;
  explicit PolicyState(std::set<Statement> statements)
      : statements_(std::move(statements)) {}
  PolicyState(std::initializer_list<Statement> statements)
      : statements_(statements) {}

  /// Returns false when the statement was already present.
  bool insert(const Statement& s);
  /// Returns false when the statement was absent.
  bool erase(const Statement& s);
  bool contains(const Statement& s) const { return statements_.count(s) != 0; }

  std::size_t size() const { return statements_.size(); }
  bool empty() const { return statements_.empty(); }
  const_iterator begin() const { return statements_.begin(); }
  const_iterator end() const { return statements_.end(); }
  const std::set<Statement>& statements() const { return statements_; }

  PrincipalSet principals() const;
  std::set<RoleName> names() const;
  /// Principals x Names, including roles with empty definitions.
  RoleSet roles() const;
  /// Heads that have at least one statement.
  RoleSet defined_roles() const;

  friend bool operator==(const PolicyState&, const PolicyState&) = default;

 private:
  std::set<Statement> statements_;
};

RoleSet roles_of_state(const PolicyState& p);

/// Positive role expression: principal sets, roles, and binary unions and
/// intersections of expressions. There is no negation.
class RoleExpr {
 public:
  enum class Kind { kPrincipals, kRole, kUnion, kIntersection };

  /// The empty principal set.
  RoleExpr() = default;

  static RoleExpr principals(PrincipalSet members);
  static RoleExpr role(Role r);
  static RoleExpr union_of(RoleExpr left, RoleExpr right);
  static RoleExpr intersection_of(RoleExpr left, RoleExpr right);

  Kind kind() const { return kind_; }
  const PrincipalSet& members() const { return members_; }
  const Role& role_ref() const { return role_; }
  const RoleExpr& left() const { return operands_.at(0); }
  const RoleExpr& right() const { return operands_.at(1); }

  bool is_static() const { return roles().empty(); }
  RoleSet roles() const;
  PrincipalSet mentioned_principals() const;

  friend bool operator==(const RoleExpr&, const RoleExpr&) = default;

 private:
  void collect_roles(RoleSet& out) const;

  Kind kind_ = Kind::kPrincipals;
  PrincipalSet members_;
  Role role_;
  std::vector<RoleExpr> operands_;
};

/// Owner-attributed containment lhs <= rhs.
struct Constraint {
  std::string id;
  Principal owner;
  RoleExpr lhs;
  RoleExpr rhs;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// One side of a role monitor: either an explicit role set or "every role of
/// the state it is bound against".
struct TrustSet {
  bool all = false;
  RoleSet roles;

  RoleSet expand(const PolicyState& p) const;

  friend bool operator==(const TrustSet&, const TrustSet&) = default;
};

/// The pair (growth-trusted, shrink-trusted). Growth-trusted roles report
/// additions to their definitions, shrink-trusted roles report removals.
struct RoleMonitor {
  TrustSet growth_trusted;
  TrustSet shrink_trusted;

  static RoleMonitor trusting_all();
  static RoleMonitor of(RoleSet growth, RoleSet shrink);

  bool is_bound() const {
    return !growth_trusted.all && !shrink_trusted.all;
  }
  /// Expands `*` against p. Explicit sets are returned unchanged.
  RoleMonitor bind(const PolicyState& p) const;

  friend bool operator==(const RoleMonitor&, const RoleMonitor&) = default;
};

struct ChangeEvent {
  enum class Kind { kAdd, kRemove };

  Kind kind;
  Statement statement;

  static ChangeEvent add(Statement s) { return {Kind::kAdd, std::move(s)}; }
  static ChangeEvent remove(Statement s) {
    return {Kind::kRemove, std::move(s)};
  }

  friend bool operator==(const ChangeEvent&, const ChangeEvent&) = default;
};

/// `{A, B}`; `{}` for the empty set.
std::string to_string(const PrincipalSet& s);
std::string to_string(const RoleSet& s);

/// Identifier syntax shared by principals and role names.
bool is_identifier(std::string_view s);

}  // namespace rtmon

#endif  // RTMON_MODEL_HPP
