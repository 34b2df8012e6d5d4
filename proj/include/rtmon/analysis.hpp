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

#ifndef RTMON_ANALYSIS_HPP
#define RTMON_ANALYSIS_HPP

#include "rtmon/engine.hpp"
#include "rtmon/model.hpp"

namespace rtmon {

/// Lower and upper membership bounds over all states reachable under a
/// role monitor. Upper sets may contain TOP.
class BoundIndex {
 public:
  BoundIndex() = default;
  BoundIndex(MembershipMap lower, MembershipMap upper, PrincipalSet universe,
             RoleSet growth_trusted);

  /// Roles without an entry read as empty.
  PrincipalSet lower(const Role& r) const;
  /// Roles without an entry read as the universe when they are untrusted
  /// for growth or owned by TOP, and as empty otherwise.
  PrincipalSet upper(const Role& r) const;

  const MembershipMap& lower_table() const { return lower_; }
  const MembershipMap& upper_table() const { return upper_; }
  /// Principals(P) plus TOP.
  const PrincipalSet& universe() const { return universe_; }

 private:
  MembershipMap lower_;
  MembershipMap upper_;
  PrincipalSet universe_;
  RoleSet growth_trusted_;
};

/// Statements whose head is shrink-trusted: those no reachable state can
/// lose.
PolicyState min_state(const PolicyState& p, const RoleMonitor& r);

MembershipMap lower_bound(const PolicyState& p, const RoleMonitor& r);
MembershipMap upper_bound(const PolicyState& p, const RoleMonitor& r);
BoundIndex bounds(const PolicyState& p, const RoleMonitor& r);

/// Largest subset of g closed under the core exclusion rules.
RoleSet core(const PolicyState& p, const RoleSet& g);
RoleSet core(const PolicyState& p, const RoleSet& g, const BoundIndex& b);

/// Restricted growth set; empty when the target is outside the core.
RoleSet gamma_restricted(const PolicyState& p, const RoleSet& g,
                         const Role& target);
RoleSet gamma_restricted(const PolicyState& p, const RoleSet& core_roles,
                         const BoundIndex& b, const Role& target);
/// Union over the expression's roles.
RoleSet gamma_restricted_expr(const PolicyState& p, const RoleSet& g,
                              const RoleExpr& expr);
RoleSet gamma_restricted_expr(const PolicyState& p, const RoleSet& core_roles,
                              const BoundIndex& b, const RoleExpr& expr);

PrincipalSet eval_upper(const BoundIndex& b, const RoleExpr& e);
PrincipalSet eval_lower(const BoundIndex& b, const RoleExpr& e);

struct BoundedCheck {
  bool holds = true;
  PrincipalSet witnesses;
  PrincipalSet upper_lhs;
  PrincipalSet lower_rhs;
};

/// Sufficient check that every reachable state satisfies q:
/// upper(lhs) contained in lower(rhs).
BoundedCheck check_bounded_containment(const PolicyState& p,
                                       const RoleMonitor& r,
                                       const Constraint& q);
BoundedCheck check_bounded_containment(const BoundIndex& b,
                                       const Constraint& q);

}  // namespace rtmon

#endif  // RTMON_ANALYSIS_HPP
