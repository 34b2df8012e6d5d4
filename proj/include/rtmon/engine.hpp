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

#ifndef RTMON_ENGINE_HPP
#define RTMON_ENGINE_HPP

#include <cstddef>
#include <functional>

#include "rtmon/model.hpp"

namespace rtmon {

/// Ground atom m(owner, role_name, member).
struct MembershipAtom {
  Principal owner;
  RoleName role_name;
  Principal member;

  auto operator<=>(const MembershipAtom&) const = default;
};

/// Least model of the semantic program of a state, projected per role.
/// Every role of Roles(P) has an entry; other roles read as empty.
class SemanticsIndex {
 public:
  SemanticsIndex() = default;
  SemanticsIndex(MembershipMap members, std::size_t iterations)
      : members_(std::move(members)), iterations_(iterations) {}

  const PrincipalSet& members(const Role& r) const;
  const MembershipMap& table() const { return members_; }
  /// Number of semi-naive rounds until the fixpoint was reached.
  std::size_t iteration_count() const { return iterations_; }

  bool contains(const MembershipAtom& a) const {
    return members(Role(a.owner, a.role_name)).count(a.member) != 0;
  }

  friend bool operator==(const SemanticsIndex& a, const SemanticsIndex& b) {
    return a.members_ == b.members_;
  }

 private:
  MembershipMap members_;
  std::size_t iterations_ = 0;
};

namespace detail {

/// Shared kernel for the standard, lower-bound and upper-bound programs.
/// Roles for which `saturated` returns true read as `universe` and their
/// definitions are skipped; everything else starts empty.
struct FixpointSpec {
  std::function<bool(const Role&)> saturated;
  PrincipalSet universe;
};

MembershipMap least_model(const PolicyState& p, const RoleSet& seed_roles,
                          const FixpointSpec& spec,
                          std::size_t* rounds = nullptr);

}  // namespace detail

SemanticsIndex evaluate(const PolicyState& p);

PrincipalSet role_members(const SemanticsIndex& idx, const Role& role);

using RoleLookup = std::function<PrincipalSet(const Role&)>;

/// Structural evaluation of an expression against any per-role membership
/// function (exact semantics, lower bounds or upper bounds).
PrincipalSet eval_expr(const RoleExpr& expr, const RoleLookup& lookup);
PrincipalSet eval_expr(const SemanticsIndex& idx, const RoleExpr& expr);

struct ConstraintCheck {
  bool satisfied = true;
  PrincipalSet violators;
  PrincipalSet lhs_members;
  PrincipalSet rhs_members;
};

ConstraintCheck check_constraint(const PolicyState& p, const Constraint& q);
ConstraintCheck check_constraint(const SemanticsIndex& idx,
                                 const Constraint& q);

}  // namespace rtmon

#endif  // RTMON_ENGINE_HPP
