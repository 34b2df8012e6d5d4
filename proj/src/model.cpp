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

#include "rtmon/model.hpp"

#include <algorithm>

namespace rtmon {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_role(const Role& r) {
  if (!is_identifier(r.owner.name) || !is_identifier(r.name.name)) {
    throw ModelError("invalid role '" + r.str() + "'");
  }
  if (is_top(r.owner)) {
    throw ModelError("reserved principal TOP cannot appear in a statement");
  }
}

void check_principal(const Principal& p) {
  if (!is_identifier(p.name)) {
    throw ModelError("invalid principal '" + p.name + "'");
  }
  if (is_top(p)) {
    throw ModelError("reserved principal TOP cannot appear in a statement");
  }
}

std::vector<Role> sorted_parts(const std::vector<Role>& parts) {
  std::vector<Role> out = parts;
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
  };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(s.front())) return false;
  return std::all_of(s.begin() + 1, s.end(), [&](char c) {
    return alpha(c) || digit(c) || c == '\'';
  });
}

Statement Statement::member(Role head, Principal member) {
  check_role(head);
  check_principal(member);
  return Statement(std::move(head), SimpleMember{std::move(member)});
}

Statement Statement::inclusion(Role head, Role source) {
  check_role(head);
  check_role(source);
  return Statement(std::move(head), SimpleInclusion{std::move(source)});
}

Statement Statement::linking(Role head, RoleName first, RoleName second) {
  check_role(head);
  Role linked(head.owner, std::move(first));
  check_role(linked);
  if (!is_identifier(second.name)) {
    throw ModelError("invalid role name '" + second.name + "'");
  }
  return Statement(std::move(head),
                   LinkingInclusion{std::move(linked), std::move(second)});
}

Statement Statement::intersection(Role head, std::vector<Role> parts) {
  check_role(head);
  std::vector<Role> unique;
  for (auto& r : parts) {
    check_role(r);
    if (std::find(unique.begin(), unique.end(), r) == unique.end()) {
      unique.push_back(std::move(r));
    }
  }
  if (unique.size() < 2) {
    throw ModelError("intersection needs at least two distinct roles");
  }
  return Statement(std::move(head), IntersectionInclusion{std::move(unique)});
}

int Statement::compare(const Statement& other) const {
  if (auto c = head_ <=> other.head_; c != 0) return c < 0 ? -1 : 1;
  if (body_.index() != other.body_.index()) {
    return body_.index() < other.body_.index() ? -1 : 1;
  }
  auto sign = [](std::strong_ordering c) { return c < 0 ? -1 : (c > 0 ? 1 : 0); };
  switch (kind()) {
    case StatementKind::kMember:
      return sign(std::get<SimpleMember>(body_).member <=>
                  std::get<SimpleMember>(other.body_).member);
    case StatementKind::kInclusion:
      return sign(std::get<SimpleInclusion>(body_).source <=>
                  std::get<SimpleInclusion>(other.body_).source);
    case StatementKind::kLinking: {
      const auto& a = std::get<LinkingInclusion>(body_);
      const auto& b = std::get<LinkingInclusion>(other.body_);
      if (auto c = a.first <=> b.first; c != 0) return sign(c);
      return sign(a.second <=> b.second);
    }
    case StatementKind::kIntersection: {
      // Set comparison: source order is presentation only.
      auto a = sorted_parts(std::get<IntersectionInclusion>(body_).parts);
      auto b = sorted_parts(std::get<IntersectionInclusion>(other.body_).parts);
      return sign(a <=> b);
    }
  }
  return 0;
}

PrincipalSet Statement::principals() const {
  PrincipalSet out{head_.owner};
  std::visit(Overloaded{
                 [&](const SimpleMember& b) { out.insert(b.member); },
                 [&](const SimpleInclusion& b) { out.insert(b.source.owner); },
                 [&](const LinkingInclusion& b) { out.insert(b.first.owner); },
                 [&](const IntersectionInclusion& b) {
                   for (const auto& r : b.parts) out.insert(r.owner);
                 },
             },
             body_);
  return out;
}

std::set<RoleName> Statement::role_names() const {
  std::set<RoleName> out{head_.name};
  std::visit(Overloaded{
                 [&](const SimpleMember&) {},
                 [&](const SimpleInclusion& b) { out.insert(b.source.name); },
                 [&](const LinkingInclusion& b) {
                   out.insert(b.first.name);
                   out.insert(b.second);
                 },
                 [&](const IntersectionInclusion& b) {
                   for (const auto& r : b.parts) out.insert(r.name);
                 },
             },
             body_);
  return out;
}

std::string Statement::str() const {
  std::string out = head_.str() + " <- ";
  std::visit(Overloaded{
                 [&](const SimpleMember& b) { out += b.member.name; },
                 [&](const SimpleInclusion& b) { out += b.source.str(); },
                 [&](const LinkingInclusion& b) {
                   out += b.first.str() + "." + b.second.name;
                 },
                 [&](const IntersectionInclusion& b) {
                   for (std::size_t i = 0; i < b.parts.size(); ++i) {
                     if (i != 0) out += " & ";
                     out += b.parts[i].str();
                   }
                 },
             },
             body_);
  return out;
}

bool PolicyState::insert(const Statement& s) {
  return statements_.insert(s).second;
}

bool PolicyState::erase(const Statement& s) {
  return statements_.erase(s) != 0;
}

PrincipalSet PolicyState::principals() const {
  PrincipalSet out;
  for (const auto& s : statements_) out.merge(s.principals());
  return out;
}

std::set<RoleName> PolicyState::names() const {
  std::set<RoleName> out;
  for (const auto& s : statements_) out.merge(s.role_names());
  return out;
}

RoleSet PolicyState::roles() const {
  RoleSet out;
  const auto names_of = names();
  for (const auto& p : principals()) {
    for (const auto& n : names_of) out.emplace(p, n);
  }
  return out;
}

RoleSet PolicyState::defined_roles() const {
  RoleSet out;
  for (const auto& s : statements_) out.insert(s.head());
  return out;
}

RoleSet roles_of_state(const PolicyState& p) { return p.roles(); }

RoleExpr RoleExpr::principals(PrincipalSet members) {
  RoleExpr e;
  e.kind_ = Kind::kPrincipals;
  e.members_ = std::move(members);
  return e;
}

RoleExpr RoleExpr::role(Role r) {
  RoleExpr e;
  e.kind_ = Kind::kRole;
  e.role_ = std::move(r);
  return e;
}

RoleExpr RoleExpr::union_of(RoleExpr left, RoleExpr right) {
  RoleExpr e;
  e.kind_ = Kind::kUnion;
  e.operands_.push_back(std::move(left));
  e.operands_.push_back(std::move(right));
  return e;
}

RoleExpr RoleExpr::intersection_of(RoleExpr left, RoleExpr right) {
  RoleExpr e;
  e.kind_ = Kind::kIntersection;
  e.operands_.push_back(std::move(left));
  e.operands_.push_back(std::move(right));
  return e;
}

void RoleExpr::collect_roles(RoleSet& out) const {
  switch (kind_) {
    case Kind::kPrincipals:
      return;
    case Kind::kRole:
      out.insert(role_);
      return;
    case Kind::kUnion:
    case Kind::kIntersection:
      for (const auto& op : operands_) op.collect_roles(out);
      return;
  }
}

RoleSet RoleExpr::roles() const {
  RoleSet out;
  collect_roles(out);
  return out;
}

PrincipalSet RoleExpr::mentioned_principals() const {
  switch (kind_) {
    case Kind::kPrincipals:
      return members_;
    case Kind::kRole:
      return {role_.owner};
    case Kind::kUnion:
    case Kind::kIntersection: {
      PrincipalSet out = left().mentioned_principals();
      out.merge(right().mentioned_principals());
      return out;
    }
  }
  return {};
}

RoleSet TrustSet::expand(const PolicyState& p) const {
  if (!all) return roles;
  RoleSet out = p.roles();
  out.insert(roles.begin(), roles.end());
  return out;
}

RoleMonitor RoleMonitor::trusting_all() {
  RoleMonitor m;
  m.growth_trusted.all = true;
  m.shrink_trusted.all = true;
  return m;
}

RoleMonitor RoleMonitor::of(RoleSet growth, RoleSet shrink) {
  RoleMonitor m;
  m.growth_trusted.roles = std::move(growth);
  m.shrink_trusted.roles = std::move(shrink);
  return m;
}

RoleMonitor RoleMonitor::bind(const PolicyState& p) const {
  return of(growth_trusted.expand(p), shrink_trusted.expand(p));
}

std::string to_string(const PrincipalSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& p : s) {
    if (!first) out += ", ";
    first = false;
    out += p.name;
  }
  return out + "}";
}

std::string to_string(const RoleSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& r : s) {
    if (!first) out += ", ";
    first = false;
    out += r.str();
  }
  return out + "}";
}

}  // namespace rtmon
