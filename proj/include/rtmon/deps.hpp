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

#ifndef RTMON_DEPS_HPP
#define RTMON_DEPS_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "rtmon/engine.hpp"
#include "rtmon/model.hpp"

namespace rtmon {

/// Statements of p whose head lies in sigma.
PolicyState restrict_state(const PolicyState& p, const RoleSet& sigma);

/// Roles whose new definitions could enlarge the target's membership.
RoleSet gamma(const PolicyState& p, const Role& target);
RoleSet gamma(const PolicyState& p, const SemanticsIndex& idx,
              const Role& target);
/// Union of gamma over the roles of the expression; empty for static ones.
RoleSet gamma_expr(const PolicyState& p, const RoleExpr& expr);
RoleSet gamma_expr(const PolicyState& p, const SemanticsIndex& idx,
                   const RoleExpr& expr);

struct RoleSupport {
  RoleSet roles;

  friend bool operator==(const RoleSupport&, const RoleSupport&) = default;
};

struct CredentialSupport {
  std::set<Statement> statements;

  friend bool operator==(const CredentialSupport&,
                         const CredentialSupport&) = default;
};

struct JustifiedEntry {
  Principal member;
  RoleSet support;
  std::size_t size_index = 1;
};

struct JustifiedOptions {
  /// Maximum entries kept per (role, member); 0 keeps everything.
  std::size_t cap = 8;
};

struct JustifiedSemantics {
  /// Entries per role, ordered by member, then support size, then support.
  std::map<Role, std::vector<JustifiedEntry>> table;
  /// Set when the cap discarded at least one entry.
  bool truncated = false;
  std::size_t rounds = 0;

  const std::vector<JustifiedEntry>& entries(const Role& r) const;
  /// Supports of `member` in `r`, in selection order.
  std::vector<RoleSet> supports(const Role& r, const Principal& member) const;
};

JustifiedSemantics justified_semantics(const PolicyState& p,
                                       const JustifiedOptions& opts = {});

/// Minimal supports of member in target, in selection order.
std::vector<RoleSupport> minimal_supports(const PolicyState& p,
                                          const Principal& member,
                                          const Role& target,
                                          const JustifiedOptions& opts = {});

/// Selection order: fewer roles first, then lexicographic on sorted roles.
bool support_less(const RoleSet& a, const RoleSet& b);

class NoSupportError : public std::runtime_error {
 public:
  explicit NoSupportError(Principal member);
  const Principal& member() const { return member_; }

 private:
  Principal member_;
};

/// Every candidate support proving member in rhs, reduced to the
/// inclusion-minimal ones and sorted in selection order. With `admissible`,
/// only supports inside it are considered.
std::vector<RoleSet> expr_supports(const PolicyState& p,
                                   const Principal& member,
                                   const RoleExpr& rhs,
                                   const std::optional<RoleSet>& admissible = {},
                                   const JustifiedOptions& opts = {});

/// One support for all members at once: the union of the first candidate
/// per member. Throws NoSupportError for the first member lacking one.
RoleSupport support_for_constraint(const PolicyState& p,
                                   const PrincipalSet& members,
                                   const RoleExpr& rhs,
                                   const std::optional<RoleSet>& admissible = {},
                                   const JustifiedOptions& opts = {});

/// Statements used by one derivation of each member in rhs, replayed over
/// p restricted to the chosen role support.
CredentialSupport credential_support_for_constraint(
    const PolicyState& p, const PrincipalSet& members, const RoleExpr& rhs,
    const JustifiedOptions& opts = {});

/// Statements used by one derivation of each member in rhs over exactly
/// the given state.
std::set<Statement> derivation_statements(const PolicyState& p,
                                          const PrincipalSet& members,
                                          const RoleExpr& rhs);

}  // namespace rtmon

#endif  // RTMON_DEPS_HPP
