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

#include <doctest.h>

#include "../support/oracle.hpp"
#include "rtmon/model.hpp"

using namespace rtmon;
using namespace rtmon::testing;

TEST_CASE("roles of the empty state") {
  CHECK(roles_of_state(PolicyState{}).empty());
}

TEST_CASE("roles of the linked policy are the cross product") {
  RoleSet rs = roles_of_state(linked_policy());
  CHECK(rs == roles({"A.r", "B.r", "C.r", "D.r", "E.r", "F.r"}));
}

TEST_CASE("roles of the hazmat policy") {
  PolicyState p = hazmat_policy();
  RoleSet rs = roles_of_state(p);
  CHECK(p.principals().size() == 7);
  CHECK(p.names().size() == 5);
  CHECK(rs.size() == 35);
  CHECK(rs.count(role("ATF.hazmatDB")));
  CHECK(rs.count(role("Fire.responsePersonnel")));
}

TEST_CASE("policy state has set semantics") {
  PolicyState p;
  Statement s = Statement::member(Role("A", "r"), Principal("B"));
  CHECK(p.insert(s));
  CHECK_FALSE(p.insert(s));
  CHECK(p.size() == 1);
  CHECK(p.erase(s));
  CHECK_FALSE(p.erase(s));
  CHECK(p.empty());
}

TEST_CASE("linked role owner must match head owner") {
  Statement s = Statement::linking(Role("A", "r"), RoleName("r1"), RoleName("r2"));
  const auto& body = std::get<LinkingInclusion>(s.body());
  CHECK(body.first == Role("A", "r1"));
  CHECK(body.second == RoleName("r2"));
  CHECK(s.str() == "A.r <- A.r1.r2");
}

TEST_CASE("intersection keeps order and drops duplicates") {
  Statement s = Statement::intersection(
      Role("A", "r"), {Role("C", "x"), Role("B", "y"), Role("C", "x")});
  const auto& parts = std::get<IntersectionInclusion>(s.body()).parts;
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == Role("C", "x"));
  CHECK(parts[1] == Role("B", "y"));
  CHECK_THROWS_AS(Statement::intersection(Role("A", "r"), {Role("B", "y"), Role("B", "y")}),
                  ModelError);
  CHECK(Statement::intersection(Role("A", "r"), {Role("B", "y"), Role("C", "x")}) ==
        Statement::intersection(Role("A", "r"), {Role("C", "x"), Role("B", "y")}));
}

TEST_CASE("top is rejected in statements") {
  CHECK_THROWS_AS(Statement::member(Role("A", "r"), top_principal()), ModelError);
  CHECK_THROWS_AS(Statement::inclusion(Role(top_principal(), RoleName("r")), Role("B", "r")),
                  ModelError);
}

TEST_CASE("expressions report their roles") {
  RoleExpr e = RoleExpr::union_of(RoleExpr::role(Role("A", "r")),
                                  RoleExpr::principals({Principal("X")}));
  CHECK(e.roles() == RoleSet{Role("A", "r")});
  CHECK_FALSE(e.is_static());
  CHECK(RoleExpr::principals({Principal("X")}).is_static());
  CHECK(RoleExpr().is_static());
  CHECK(e.mentioned_principals() == principals({"A", "X"}));
}

TEST_CASE("monitor binding expands stars") {
  PolicyState p = two_path_policy();
  RoleMonitor m = RoleMonitor::trusting_all();
  CHECK_FALSE(m.is_bound());
  RoleMonitor b = m.bind(p);
  CHECK(b.is_bound());
  CHECK(b.growth_trusted.roles == p.roles());
  CHECK(b.shrink_trusted.roles == p.roles());
  RoleMonitor explicit_m = RoleMonitor::of({Role("A", "r")}, {});
  CHECK(explicit_m.bind(p) == explicit_m);
}

TEST_CASE("set rendering") {
  CHECK(to_string(PrincipalSet{}) == "{}");
  CHECK(to_string(principals({"B", "A"})) == "{A, B}");
  CHECK(to_string(roles({"B.r", "A.s"})) == "{A.s, B.r}");
}

TEST_CASE("identifiers") {
  CHECK(is_identifier("O'Connel"));
  CHECK(is_identifier("_x1"));
  CHECK_FALSE(is_identifier(""));
  CHECK_FALSE(is_identifier("1a"));
  CHECK_FALSE(is_identifier("a.b"));
}
