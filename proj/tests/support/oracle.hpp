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

#ifndef RTMON_TESTS_ORACLE_HPP
#define RTMON_TESTS_ORACLE_HPP

#include <cstddef>
#include <map>
#include <utility>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rtmon/model.hpp"

namespace rtmon::testing {

// Reference fixtures.
PolicyState hazmat_policy();
PolicyState hazmat_policy_extended();
Statement rollins_responder();
Statement burke_responder();
PolicyState linked_policy();
PolicyState two_path_policy();
PolicyState chain_policy();
Constraint hazmat_constraint();
/// Every HAZMAT role except Emergency.dept in G, S = {ATF.hazmatDB}.
RoleMonitor partial_monitor();

Role role(const std::string& text);
Statement stmt(const std::string& text);
RoleSet roles(const std::vector<std::string>& texts);
PrincipalSet principals(const std::vector<std::string>& names);

// Naive reference semantics: re-applies every statement until nothing
// changes. Every role of Roles(P) gets an entry.
MembershipMap naive_semantics(const PolicyState& p);
PrincipalSet naive_eval(const MembershipMap& m, const RoleExpr& e);

/// Every subset-minimal Sigma among the defined roles with
/// member in [target] of P restricted to Sigma.
std::set<RoleSet> brute_minimal_supports(const PolicyState& p,
                                         const Principal& member,
                                         const Role& target);

/// brute_minimal_supports for every (role, member) with a support at once.
std::map<std::pair<Role, Principal>, std::set<RoleSet>> brute_support_table(
    const PolicyState& p);

/// All subset-minimal statement sets proving every member is in rhs.
std::set<std::set<Statement>> brute_minimal_credential_supports(
    const PolicyState& p, const PrincipalSet& members, const RoleExpr& rhs);

/// Naive growth set: repeat the three closure rules over the whole state.
RoleSet naive_gamma(const PolicyState& p, const Role& target);

struct GenConfig {
  std::size_t principals = 4;
  std::size_t names = 2;
  std::size_t max_statements = 8;
};

class Generator {
 public:
  explicit Generator(std::uint32_t seed) : rng_(seed) {}

  std::vector<Principal> principal_pool(const GenConfig& c) const;
  std::vector<RoleName> name_pool(const GenConfig& c) const;
  Role random_role(const GenConfig& c);
  Statement random_statement(const GenConfig& c);
  PolicyState random_state(const GenConfig& c);
  RoleExpr random_expr(const GenConfig& c, int depth = 2);
  Constraint random_constraint(const GenConfig& c);
  RoleSet random_subset(const RoleSet& from, double keep);
  std::size_t below(std::size_t n);
  bool coin(double p = 0.5);
  std::mt19937& rng() { return rng_; }

 private:
  std::mt19937 rng_;
};

/// Universe of Roles(P) for a generator config, whether or not defined.
RoleSet all_roles(const GenConfig& c);

}  // namespace rtmon::testing

#endif  // RTMON_TESTS_ORACLE_HPP
