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

#include "rtmon/engine.hpp"

#include <algorithm>
#include <iterator>

namespace rtmon {

namespace {

const PrincipalSet kEmpty;

// Semi-naive evaluation state. `full` holds every atom derived so far;
// `delta` the atoms first derived in the previous round.
class SemiNaive {
 public:
  SemiNaive(const PolicyState& p, const RoleSet& seeds,
            const detail::FixpointSpec& spec)
      : p_(p), spec_(spec) {
    for (const auto& r : seeds) {
      full_[r];
      if (is_saturated(r)) full_[r] = spec_.universe;
    }
  }

  std::size_t run() {
    std::size_t rounds = 0;
    // Facts first; they never depend on anything.
    for (const auto& s : p_) {
      if (s.kind() != StatementKind::kMember || is_saturated(s.head())) continue;
      add(s.head(), std::get<SimpleMember>(s.body()).member);
    }
    first_round_ = true;
    do {
      ++rounds;
      delta_ = std::move(next_);
      next_.clear();
      for (const auto& s : p_) {
        if (is_saturated(s.head())) continue;
        fire(s);
      }
      first_round_ = false;
    } while (!next_.empty());
    return rounds;
  }

  MembershipMap take() { return std::move(full_); }

 private:
  bool is_saturated(const Role& r) const {
    return spec_.saturated && spec_.saturated(r);
  }

  const PrincipalSet& full_of(const Role& r) const {
    if (is_saturated(r)) return spec_.universe;
    auto it = full_.find(r);
    return it == full_.end() ? kEmpty : it->second;
  }

  // Saturated roles contribute their whole universe exactly once, in the
  // first round, as if it had just been derived.
  const PrincipalSet& delta_of(const Role& r) const {
    if (is_saturated(r)) return first_round_ ? spec_.universe : kEmpty;
    auto it = delta_.find(r);
    return it == delta_.end() ? kEmpty : it->second;
  }

  void add(const Role& head, const Principal& z) {
    if (full_[head].insert(z).second) next_[head].insert(z);
  }

  void fire(const Statement& s) {
    const Role& head = s.head();
    switch (s.kind()) {
      case StatementKind::kMember:
        return;
      case StatementKind::kInclusion: {
        const auto& src = std::get<SimpleInclusion>(s.body()).source;
        for (const auto& z : snapshot(delta_of(src))) add(head, z);
        return;
      }
      case StatementKind::kLinking: {
        const auto& b = std::get<LinkingInclusion>(s.body());
        // New link targets joined with everything known about them.
        for (const auto& y : snapshot(delta_of(b.first))) {
          for (const auto& z : snapshot(full_of(Role(y, b.second)))) {
            add(head, z);
          }
        }
        // Known link targets joined with what they gained last round.
        for (const auto& y : snapshot(full_of(b.first))) {
          for (const auto& z : snapshot(delta_of(Role(y, b.second)))) {
            add(head, z);
          }
        }
        return;
      }
      case StatementKind::kIntersection: {
        const auto& parts = std::get<IntersectionInclusion>(s.body()).parts;
        for (const auto& part : parts) {
          for (const auto& z : snapshot(delta_of(part))) {
            bool everywhere = std::all_of(
                parts.begin(), parts.end(),
                [&](const Role& q) { return full_of(q).count(z) != 0; });
            if (everywhere) add(head, z);
          }
        }
        return;
      }
    }
  }

  // Heads may coincide with body roles (A.r <- A.r.r), so iterate copies.
  static std::vector<Principal> snapshot(const PrincipalSet& s) {
    return {s.begin(), s.end()};
  }

  const PolicyState& p_;
  const detail::FixpointSpec& spec_;
  MembershipMap full_;
  MembershipMap delta_;
  MembershipMap next_;
  bool first_round_ = true;
};

}  // namespace

namespace detail {

MembershipMap least_model(const PolicyState& p, const RoleSet& seed_roles,
                          const FixpointSpec& spec, std::size_t* rounds) {
  SemiNaive engine(p, seed_roles, spec);
  std::size_t n = engine.run();
  if (rounds != nullptr) *rounds = n;
  return engine.take();
}

}  // namespace detail

const PrincipalSet& SemanticsIndex::members(const Role& r) const {
  auto it = members_.find(r);
  return it == members_.end() ? kEmpty : it->second;
}

SemanticsIndex evaluate(const PolicyState& p) {
  std::size_t rounds = 0;
  detail::FixpointSpec spec;
  auto table = detail::least_model(p, p.roles(), spec, &rounds);
  return SemanticsIndex(std::move(table), rounds);
}

PrincipalSet role_members(const SemanticsIndex& idx, const Role& role) {
  return idx.members(role);
}

PrincipalSet eval_expr(const RoleExpr& expr, const RoleLookup& lookup) {
  switch (expr.kind()) {
    case RoleExpr::Kind::kPrincipals:
      return expr.members();
    case RoleExpr::Kind::kRole:
      return lookup(expr.role_ref());
    case RoleExpr::Kind::kUnion: {
      PrincipalSet out = eval_expr(expr.left(), lookup);
      out.merge(eval_expr(expr.right(), lookup));
      return out;
    }
    case RoleExpr::Kind::kIntersection: {
      PrincipalSet l = eval_expr(expr.left(), lookup);
      PrincipalSet r = eval_expr(expr.right(), lookup);
      PrincipalSet out;
      std::set_intersection(l.begin(), l.end(), r.begin(), r.end(),
                            std::inserter(out, out.end()));
      return out;
    }
  }
  return {};
}

PrincipalSet eval_expr(const SemanticsIndex& idx, const RoleExpr& expr) {
  return eval_expr(expr, [&](const Role& r) { return idx.members(r); });
}

ConstraintCheck check_constraint(const SemanticsIndex& idx,
                                 const Constraint& q) {
  ConstraintCheck out;
  out.lhs_members = eval_expr(idx, q.lhs);
  out.rhs_members = eval_expr(idx, q.rhs);
  std::set_difference(out.lhs_members.begin(), out.lhs_members.end(),
                      out.rhs_members.begin(), out.rhs_members.end(),
                      std::inserter(out.violators, out.violators.end()));
  out.satisfied = out.violators.empty();
  return out;
}

ConstraintCheck check_constraint(const PolicyState& p, const Constraint& q) {
  return check_constraint(evaluate(p), q);
}

}  // namespace rtmon
