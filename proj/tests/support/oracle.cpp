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

#include "oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "rtmon/parser.hpp"

namespace rtmon::testing {

namespace {

const char* const kTable1 =
    "ATF.hazmatDB <- Rollins\n"
    "Emergency.hazmatPersonnel <- Emergency.responsePersonnel & "
    "ATF.hazmatTraining\n"
    "Emergency.responsePersonnel <- Emergency.dept.responsePersonnel\n"
    "Emergency.dept <- Fire\n"
    "Emergency.dept <- Police\n"
    "ATF.hazmatTraining <- Rollins\n"
    "ATF.hazmatTraining <- Burke\n"
    "ATF.hazmatTraining <- O'Connel\n";

PrincipalSet body_members(const MembershipMap& m, const Statement& s) {
  auto get = [&](const Role& r) -> PrincipalSet {
    auto it = m.find(r);
    return it == m.end() ? PrincipalSet{} : it->second;
  };
  switch (s.kind()) {
    case StatementKind::kMember:
      return {std::get<SimpleMember>(s.body()).member};
    case StatementKind::kInclusion:
      return get(std::get<SimpleInclusion>(s.body()).source);
    case StatementKind::kLinking: {
      const auto& l = std::get<LinkingInclusion>(s.body());
      PrincipalSet out;
      for (const auto& y : get(l.first)) {
        for (const auto& z : get(Role(y, l.second))) out.insert(z);
      }
      return out;
    }
    case StatementKind::kIntersection: {
      const auto& parts = std::get<IntersectionInclusion>(s.body()).parts;
      PrincipalSet out = get(parts.front());
      for (std::size_t i = 1; i < parts.size(); ++i) {
        PrincipalSet next;
        PrincipalSet other = get(parts[i]);
        for (const auto& d : out) {
          if (other.count(d)) next.insert(d);
        }
        out = std::move(next);
      }
      return out;
    }
  }
  return {};
}

std::vector<Role> defined_list(const PolicyState& p) {
  RoleSet d = p.defined_roles();
  return {d.begin(), d.end()};
}

}  // namespace

PolicyState hazmat_policy() { return parse_policy(kTable1); }

Statement rollins_responder() { return stmt("Police.responsePersonnel <- Rollins"); }
Statement burke_responder() { return stmt("Police.responsePersonnel <- Burke"); }

PolicyState hazmat_policy_extended() {
  PolicyState p = hazmat_policy();
  p.insert(rollins_responder());
  p.insert(burke_responder());
  return p;
}

PolicyState linked_policy() {
  return parse_policy(
      "A.r <- A.r.r\nA.r <- B\nB.r <- C\nC.r <- D.r\nE.r <- F\n");
}

PolicyState two_path_policy() {
  return parse_policy("A.r <- B.r\nA.r <- C.r\nB.r <- F\nC.r <- F\n");
}

PolicyState chain_policy() {
  return parse_policy(
      "A.r <- E\nB.r <- C.r\nB.r <- D.r\nC.r <- E\nD.r <- F\n");
}

Constraint hazmat_constraint() {
  return parse_constraint(
      "constraint c1 owner Emergency: Emergency.hazmatPersonnel <= "
      "ATF.hazmatDB");
}

RoleMonitor partial_monitor() {
  RoleSet g = hazmat_policy().roles();
  g.erase(role("Emergency.dept"));
  return RoleMonitor::of(g, {role("ATF.hazmatDB")});
}

Role role(const std::string& text) {
  auto dot = text.find('.');
  if (dot == std::string::npos) throw std::invalid_argument(text);
  return Role(text.substr(0, dot), text.substr(dot + 1));
}

Statement stmt(const std::string& text) { return parse_statement(text); }

RoleSet roles(const std::vector<std::string>& texts) {
  RoleSet out;
  for (const auto& t : texts) out.insert(role(t));
  return out;
}

PrincipalSet principals(const std::vector<std::string>& names) {
  PrincipalSet out;
  for (const auto& n : names) out.insert(Principal(n));
  return out;
}

MembershipMap naive_semantics(const PolicyState& p) {
  MembershipMap m;
  for (const auto& r : p.roles()) m[r];
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& s : p) {
      PrincipalSet add = body_members(m, s);
      auto& head = m[s.head()];
      for (const auto& d : add) changed |= head.insert(d).second;
    }
  }
  return m;
}

PrincipalSet naive_eval(const MembershipMap& m, const RoleExpr& e) {
  switch (e.kind()) {
    case RoleExpr::Kind::kPrincipals:
      return e.members();
    case RoleExpr::Kind::kRole: {
      auto it = m.find(e.role_ref());
      return it == m.end() ? PrincipalSet{} : it->second;
    }
    case RoleExpr::Kind::kUnion: {
      PrincipalSet out = naive_eval(m, e.left());
      PrincipalSet r = naive_eval(m, e.right());
      out.insert(r.begin(), r.end());
      return out;
    }
    case RoleExpr::Kind::kIntersection: {
      PrincipalSet l = naive_eval(m, e.left());
      PrincipalSet r = naive_eval(m, e.right());
      PrincipalSet out;
      std::set_intersection(l.begin(), l.end(), r.begin(), r.end(),
                            std::inserter(out, out.end()));
      return out;
    }
  }
  return {};
}

std::set<RoleSet> brute_minimal_supports(const PolicyState& p,
                                         const Principal& member,
                                         const Role& target) {
  std::vector<Role> pool = defined_list(p);
  if (pool.size() > 20) throw std::invalid_argument("state too large");
  std::vector<RoleSet> proving;
  for (std::uint32_t mask = 0; mask < (1u << pool.size()); ++mask) {
    RoleSet sigma;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (mask & (1u << i)) sigma.insert(pool[i]);
    }
    PolicyState sub;
    for (const auto& s : p) {
      if (sigma.count(s.head())) sub.insert(s);
    }
    MembershipMap m = naive_semantics(sub);
    auto it = m.find(target);
    if (it != m.end() && it->second.count(member)) proving.push_back(sigma);
  }
  std::set<RoleSet> out;
  for (const auto& a : proving) {
    bool minimal = std::none_of(proving.begin(), proving.end(), [&](const RoleSet& b) {
      return b.size() < a.size() &&
             std::includes(a.begin(), a.end(), b.begin(), b.end());
    });
    if (minimal) out.insert(a);
  }
  return out;
}

std::map<std::pair<Role, Principal>, std::set<RoleSet>> brute_support_table(
    const PolicyState& p) {
  std::vector<Role> pool = defined_list(p);
  if (pool.size() > 20) throw std::invalid_argument("state too large");
  std::map<std::pair<Role, Principal>, std::vector<RoleSet>> proving;
  for (std::uint32_t mask = 0; mask < (1u << pool.size()); ++mask) {
    RoleSet sigma;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (mask & (1u << i)) sigma.insert(pool[i]);
    }
    PolicyState sub;
    for (const auto& s : p) {
      if (sigma.count(s.head())) sub.insert(s);
    }
    for (const auto& [r, ms] : naive_semantics(sub)) {
      for (const auto& d : ms) proving[{r, d}].push_back(sigma);
    }
  }
  std::map<std::pair<Role, Principal>, std::set<RoleSet>> out;
  for (const auto& [key, sets] : proving) {
    for (const auto& a : sets) {
      bool minimal = std::none_of(sets.begin(), sets.end(), [&](const RoleSet& b) {
        return b.size() < a.size() &&
               std::includes(a.begin(), a.end(), b.begin(), b.end());
      });
      if (minimal) out[key].insert(a);
    }
  }
  return out;
}

std::set<std::set<Statement>> brute_minimal_credential_supports(
    const PolicyState& p, const PrincipalSet& members, const RoleExpr& rhs) {
  std::vector<Statement> pool(p.begin(), p.end());
  if (pool.size() > 16) throw std::invalid_argument("state too large");
  std::vector<std::set<Statement>> proving;
  for (std::uint32_t mask = 0; mask < (1u << pool.size()); ++mask) {
    std::set<Statement> chosen;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (mask & (1u << i)) chosen.insert(pool[i]);
    }
    PrincipalSet got = naive_eval(naive_semantics(PolicyState(chosen)), rhs);
    if (std::includes(got.begin(), got.end(), members.begin(), members.end())) {
      proving.push_back(std::move(chosen));
    }
  }
  std::set<std::set<Statement>> out;
  for (const auto& a : proving) {
    bool minimal = std::none_of(proving.begin(), proving.end(), [&](const auto& b) {
      return b.size() < a.size() &&
             std::includes(a.begin(), a.end(), b.begin(), b.end());
    });
    if (minimal) out.insert(a);
  }
  return out;
}

RoleSet naive_gamma(const PolicyState& p, const Role& target) {
  MembershipMap m = naive_semantics(p);
  RoleSet g{target};
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& s : p) {
      if (!g.count(s.head())) continue;
      switch (s.kind()) {
        case StatementKind::kMember:
          break;
        case StatementKind::kInclusion:
          changed |= g.insert(std::get<SimpleInclusion>(s.body()).source).second;
          break;
        case StatementKind::kLinking: {
          const auto& l = std::get<LinkingInclusion>(s.body());
          changed |= g.insert(l.first).second;
          for (const auto& x : m[l.first]) {
            changed |= g.insert(Role(x, l.second)).second;
          }
          break;
        }
        case StatementKind::kIntersection:
          for (const auto& r : std::get<IntersectionInclusion>(s.body()).parts) {
            changed |= g.insert(r).second;
          }
          break;
      }
    }
  }
  return g;
}

std::vector<Principal> Generator::principal_pool(const GenConfig& c) const {
  static const char* const kNames[] = {"A", "B", "C", "D", "E", "F"};
  std::vector<Principal> out;
  for (std::size_t i = 0; i < c.principals && i < 6; ++i) out.emplace_back(kNames[i]);
  return out;
}

std::vector<RoleName> Generator::name_pool(const GenConfig& c) const {
  static const char* const kNames[] = {"r", "s", "t"};
  std::vector<RoleName> out;
  for (std::size_t i = 0; i < c.names && i < 3; ++i) out.emplace_back(kNames[i]);
  return out;
}

RoleSet all_roles(const GenConfig& c) {
  Generator g(0);
  RoleSet out;
  for (const auto& a : g.principal_pool(c)) {
    for (const auto& n : g.name_pool(c)) out.insert(Role(a, n));
  }
  return out;
}

std::size_t Generator::below(std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
}

bool Generator::coin(double p) { return std::bernoulli_distribution(p)(rng_); }

Role Generator::random_role(const GenConfig& c) {
  auto ps = principal_pool(c);
  auto ns = name_pool(c);
  return Role(ps[below(ps.size())], ns[below(ns.size())]);
}

Statement Generator::random_statement(const GenConfig& c) {
  auto ps = principal_pool(c);
  auto ns = name_pool(c);
  Role head = random_role(c);
  switch (below(10)) {
    case 0:
    case 1:
    case 2:
      return Statement::member(head, ps[below(ps.size())]);
    case 3:
    case 4:
    case 5:
      return Statement::inclusion(head, random_role(c));
    case 6:
    case 7:
      return Statement::linking(head, ns[below(ns.size())], ns[below(ns.size())]);
    default: {
      Role a = random_role(c);
      Role b = random_role(c);
      while (b == a) b = random_role(c);
      std::vector<Role> parts{a, b};
      if (coin(0.2)) {
        Role x = random_role(c);
        if (x != a && x != b) parts.push_back(x);
      }
      return Statement::intersection(head, parts);
    }
  }
}

PolicyState Generator::random_state(const GenConfig& c) {
  PolicyState p;
  std::size_t n = below(c.max_statements + 1);
  for (std::size_t i = 0; i < n; ++i) p.insert(random_statement(c));
  return p;
}

RoleExpr Generator::random_expr(const GenConfig& c, int depth) {
  std::size_t pick = depth > 0 ? below(6) : below(3);
  auto ps = principal_pool(c);
  switch (pick) {
    case 0: {
      PrincipalSet s;
      for (const auto& p : ps) {
        if (coin(0.3)) s.insert(p);
      }
      return RoleExpr::principals(s);
    }
    case 1:
    case 2:
      return RoleExpr::role(random_role(c));
    case 3:
    case 4:
      return RoleExpr::union_of(random_expr(c, depth - 1), random_expr(c, depth - 1));
    default:
      return RoleExpr::intersection_of(random_expr(c, depth - 1),
                                       random_expr(c, depth - 1));
  }
}

Constraint Generator::random_constraint(const GenConfig& c) {
  Constraint q;
  q.id = "q";
  q.owner = principal_pool(c).front();
  q.lhs = random_expr(c, 1);
  q.rhs = random_expr(c, 1);
  return q;
}

RoleSet Generator::random_subset(const RoleSet& from, double keep) {
  RoleSet out;
  for (const auto& r : from) {
    if (coin(keep)) out.insert(r);
  }
  return out;
}

}  // namespace rtmon::testing
