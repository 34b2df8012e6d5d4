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

#include "rtmon/analysis.hpp"

#include <algorithm>
#include <deque>
#include <iterator>

#include "rtmon/deps.hpp"

namespace rtmon {

namespace {

RoleMonitor bound_against(const PolicyState& p, const RoleMonitor& r) {
  return r.is_bound() ? r : r.bind(p);
}

PrincipalSet universe_of(const PolicyState& p) {
  PrincipalSet u = p.principals();
  u.insert(top_principal());
  return u;
}

}  // namespace

BoundIndex::BoundIndex(MembershipMap lower, MembershipMap upper,
                       PrincipalSet universe, RoleSet growth_trusted)
    : lower_(std::move(lower)),
      upper_(std::move(upper)),
      universe_(std::move(universe)),
      growth_trusted_(std::move(growth_trusted)) {}

PrincipalSet BoundIndex::lower(const Role& r) const {
  auto it = lower_.find(r);
  return it == lower_.end() ? PrincipalSet{} : it->second;
}

PrincipalSet BoundIndex::upper(const Role& r) const {
  auto it = upper_.find(r);
  if (it != upper_.end()) return it->second;
  if (is_top(r.owner) || growth_trusted_.count(r) == 0) return universe_;
  return {};
}

PolicyState min_state(const PolicyState& p, const RoleMonitor& r) {
  return restrict_state(p, bound_against(p, r).shrink_trusted.roles);
}

MembershipMap lower_bound(const PolicyState& p, const RoleMonitor& r) {
  detail::FixpointSpec spec;
  return detail::least_model(min_state(p, r), p.roles(), spec);
}

MembershipMap upper_bound(const PolicyState& p, const RoleMonitor& r) {
  const RoleSet g = bound_against(p, r).growth_trusted.roles;
  detail::FixpointSpec spec;
  spec.universe = universe_of(p);
  spec.saturated = [&g](const Role& role) {
    return is_top(role.owner) || g.count(role) == 0;
  };
  return detail::least_model(p, p.roles(), spec);
}

BoundIndex bounds(const PolicyState& p, const RoleMonitor& r) {
  RoleMonitor bound = bound_against(p, r);
  return BoundIndex(lower_bound(p, bound), upper_bound(p, bound),
                    universe_of(p), bound.growth_trusted.roles);
}

RoleSet core(const PolicyState& p, const RoleSet& g, const BoundIndex& b) {
  RoleSet in = g;
  auto inside = [&](const Role& r) {
    return !is_top(r.owner) && in.count(r) != 0;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& s : p) {
      if (!inside(s.head())) continue;
      bool exclude = false;
      switch (s.kind()) {
        case StatementKind::kMember:
          break;
        case StatementKind::kInclusion:
          exclude = !inside(std::get<SimpleInclusion>(s.body()).source);
          break;
        case StatementKind::kLinking: {
          const auto& l = std::get<LinkingInclusion>(s.body());
          if (!inside(l.first)) {
            exclude = true;
            break;
          }
          for (const auto& x : b.upper(l.first)) {
            if (!inside(Role(x, l.second))) {
              exclude = true;
              break;
            }
          }
          break;
        }
        case StatementKind::kIntersection: {
          const auto& parts = std::get<IntersectionInclusion>(s.body()).parts;
          exclude = std::none_of(parts.begin(), parts.end(), inside);
          break;
        }
      }
      if (exclude) {
        in.erase(s.head());
        changed = true;
      }
    }
  }
  return in;
}

RoleSet core(const PolicyState& p, const RoleSet& g) {
  return core(p, g, bounds(p, RoleMonitor::of(g, {})));
}

RoleSet gamma_restricted(const PolicyState& p, const RoleSet& core_roles,
                         const BoundIndex& b, const Role& target) {
  if (core_roles.count(target) == 0) return {};
  std::map<Role, std::vector<const Statement*>> by_head;
  for (const auto& s : p) by_head[s.head()].push_back(&s);

  RoleSet out{target};
  std::deque<Role> work{target};
  auto reach = [&](const Role& r) {
    if (out.insert(r).second) work.push_back(r);
  };
  while (!work.empty()) {
    Role cur = work.front();
    work.pop_front();
    auto it = by_head.find(cur);
    if (it == by_head.end()) continue;
    for (const Statement* s : it->second) {
      switch (s->kind()) {
        case StatementKind::kMember:
          break;
        case StatementKind::kInclusion:
          reach(std::get<SimpleInclusion>(s->body()).source);
          break;
        case StatementKind::kLinking: {
          const auto& l = std::get<LinkingInclusion>(s->body());
          reach(l.first);
          for (const auto& x : b.upper(l.first)) reach(Role(x, l.second));
          break;
        }
        case StatementKind::kIntersection:
          for (const auto& part :
               std::get<IntersectionInclusion>(s->body()).parts) {
            if (core_roles.count(part) != 0) reach(part);
          }
          break;
      }
    }
  }
  return out;
}

RoleSet gamma_restricted(const PolicyState& p, const RoleSet& g,
                         const Role& target) {
  BoundIndex b = bounds(p, RoleMonitor::of(g, {}));
  return gamma_restricted(p, core(p, g, b), b, target);
}

RoleSet gamma_restricted_expr(const PolicyState& p, const RoleSet& core_roles,
                              const BoundIndex& b, const RoleExpr& expr) {
  RoleSet out;
  for (const auto& r : expr.roles()) {
    out.merge(gamma_restricted(p, core_roles, b, r));
  }
  return out;
}

RoleSet gamma_restricted_expr(const PolicyState& p, const RoleSet& g,
                              const RoleExpr& expr) {
  BoundIndex b = bounds(p, RoleMonitor::of(g, {}));
  return gamma_restricted_expr(p, core(p, g, b), b, expr);
}

PrincipalSet eval_upper(const BoundIndex& b, const RoleExpr& e) {
  return eval_expr(e, [&](const Role& r) { return b.upper(r); });
}

PrincipalSet eval_lower(const BoundIndex& b, const RoleExpr& e) {
  return eval_expr(e, [&](const Role& r) { return b.lower(r); });
}

BoundedCheck check_bounded_containment(const BoundIndex& b,
                                       const Constraint& q) {
  BoundedCheck out;
  out.upper_lhs = eval_upper(b, q.lhs);
  out.lower_rhs = eval_lower(b, q.rhs);
  std::set_difference(out.upper_lhs.begin(), out.upper_lhs.end(),
                      out.lower_rhs.begin(), out.lower_rhs.end(),
                      std::inserter(out.witnesses, out.witnesses.end()));
  out.holds = out.witnesses.empty();
  return out;
}

BoundedCheck check_bounded_containment(const PolicyState& p,
                                       const RoleMonitor& r,
                                       const Constraint& q) {
  return check_bounded_containment(bounds(p, r), q);
}

}  // namespace rtmon
