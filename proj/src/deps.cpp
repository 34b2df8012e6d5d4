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

#include "rtmon/deps.hpp"

#include <algorithm>
#include <deque>
#include <iterator>
#include <utility>

namespace rtmon {

PolicyState restrict_state(const PolicyState& p, const RoleSet& sigma) {
  PolicyState out;
  for (const auto& s : p) {
    if (sigma.count(s.head()) != 0) out.insert(s);
  }
  return out;
}

RoleSet gamma(const PolicyState& p, const SemanticsIndex& idx,
              const Role& target) {
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
          const auto& b = std::get<LinkingInclusion>(s->body());
          reach(b.first);
          for (const auto& x : idx.members(b.first)) reach(Role(x, b.second));
          break;
        }
        case StatementKind::kIntersection:
          for (const auto& part :
               std::get<IntersectionInclusion>(s->body()).parts) {
            reach(part);
          }
          break;
      }
    }
  }
  return out;
}

RoleSet gamma(const PolicyState& p, const Role& target) {
  return gamma(p, evaluate(p), target);
}

RoleSet gamma_expr(const PolicyState& p, const SemanticsIndex& idx,
                   const RoleExpr& expr) {
  RoleSet out;
  for (const auto& r : expr.roles()) out.merge(gamma(p, idx, r));
  return out;
}

RoleSet gamma_expr(const PolicyState& p, const RoleExpr& expr) {
  return gamma_expr(p, evaluate(p), expr);
}

bool support_less(const RoleSet& a, const RoleSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

using Sig = std::vector<int>;  // sorted role ids

struct Entry {
  Sig sig;
  std::size_t index;
};

bool sig_less(const Sig& a, const Sig& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

Sig merge(const Sig& a, const Sig& b) {
  Sig out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

Sig with(Sig s, int id) {
  auto it = std::lower_bound(s.begin(), s.end(), id);
  if (it == s.end() || *it != id) s.insert(it, id);
  return s;
}

bool subset(const Sig& small, const Sig& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

using MemberEntries = std::map<Principal, std::vector<Entry>>;

class Worklist {
 public:
  Worklist(const PolicyState& p, const JustifiedOptions& opts)
      : p_(p), cap_(opts.cap) {
    for (const auto& r : p.roles()) {
      ids_.emplace(r, static_cast<int>(roles_.size()));
      roles_.push_back(r);
    }
    current_.resize(roles_.size());
    ever_.resize(roles_.size());
  }

  JustifiedSemantics run() {
    JustifiedSemantics out;
    do {
      changed_ = false;
      ++out.rounds;
      for (const auto& s : p_) apply(s);
    } while (changed_);
    out.truncated = truncated_;
    for (std::size_t r = 0; r < roles_.size(); ++r) {
      std::vector<JustifiedEntry> list;
      for (const auto& [member, entries] : current_[r]) {
        std::vector<Entry> sorted = entries;
        std::sort(sorted.begin(), sorted.end(), [](const Entry& a, const Entry& b) {
          return sig_less(a.sig, b.sig);
        });
        for (const auto& e : sorted) {
          JustifiedEntry je{member, {}, e.index};
          for (int id : e.sig) je.support.insert(roles_[id]);
          list.push_back(std::move(je));
        }
      }
      if (!list.empty()) out.table.emplace(roles_[r], std::move(list));
    }
    return out;
  }

 private:
  int id(const Role& r) const {
    auto it = ids_.find(r);
    return it == ids_.end() ? -1 : it->second;
  }

  void insert(int role, const Principal& member, Sig sig, std::size_t index) {
    auto& seen = ever_[role];
    auto key = std::make_pair(member, sig);
    if (seen.count(key) != 0) return;
    auto& list = current_[role][member];
    for (const auto& e : list) {
      if (subset(e.sig, sig)) return;
    }
    list.erase(std::remove_if(list.begin(), list.end(),
                              [&](const Entry& e) { return subset(sig, e.sig); }),
               list.end());
    list.push_back({std::move(sig), index});
    seen.insert(std::move(key));
    changed_ = true;
    if (cap_ != 0 && list.size() > cap_) {
      std::sort(list.begin(), list.end(), [](const Entry& a, const Entry& b) {
        return sig_less(a.sig, b.sig);
      });
      list.resize(cap_);
      truncated_ = true;
    }
  }

  void apply(const Statement& s) {
    const int head = id(s.head());
    switch (s.kind()) {
      case StatementKind::kMember:
        insert(head, std::get<SimpleMember>(s.body()).member, Sig{head}, 1);
        return;
      case StatementKind::kInclusion: {
        MemberEntries src = current_[id(std::get<SimpleInclusion>(s.body()).source)];
        for (const auto& [d, entries] : src) {
          for (const auto& e : entries) insert(head, d, with(e.sig, head), e.index + 1);
        }
        return;
      }
      case StatementKind::kLinking: {
        const auto& b = std::get<LinkingInclusion>(s.body());
        MemberEntries first = current_[id(b.first)];
        for (const auto& [x, entries1] : first) {
          int link = id(Role(x, b.second));
          if (link < 0) continue;
          MemberEntries second = current_[link];
          for (const auto& [d, entries2] : second) {
            for (const auto& e1 : entries1) {
              for (const auto& e2 : entries2) {
                insert(head, d, with(merge(e1.sig, e2.sig), head),
                       e1.index + e2.index);
              }
            }
          }
        }
        return;
      }
      case StatementKind::kIntersection: {
        const auto& parts = std::get<IntersectionInclusion>(s.body()).parts;
        std::vector<MemberEntries> snaps;
        snaps.reserve(parts.size());
        for (const auto& part : parts) snaps.push_back(current_[id(part)]);
        for (const auto& [d, entries0] : snaps[0]) {
          std::vector<const std::vector<Entry>*> lists{&entries0};
          bool everywhere = true;
          for (std::size_t k = 1; k < snaps.size() && everywhere; ++k) {
            auto it = snaps[k].find(d);
            everywhere = it != snaps[k].end() && !it->second.empty();
            if (everywhere) lists.push_back(&it->second);
          }
          if (everywhere) combine(head, d, lists, 0, Sig{head}, 0);
        }
        return;
      }
    }
  }

  // Every choice of one entry per intersection part.
  void combine(int head, const Principal& d,
               const std::vector<const std::vector<Entry>*>& lists,
               std::size_t k, const Sig& acc, std::size_t index) {
    if (k == lists.size()) {
      insert(head, d, acc, index);
      return;
    }
    for (const auto& e : *lists[k]) {
      combine(head, d, lists, k + 1, merge(acc, e.sig), index + e.index);
    }
  }

  const PolicyState& p_;
  std::size_t cap_;
  std::map<Role, int> ids_;
  std::vector<Role> roles_;
  std::vector<MemberEntries> current_;
  std::vector<std::set<std::pair<Principal, Sig>>> ever_;
  bool changed_ = false;
  bool truncated_ = false;
};

const std::vector<JustifiedEntry> kNoEntries;

std::vector<RoleSet> reduce_minimal(std::vector<RoleSet> cands) {
  std::sort(cands.begin(), cands.end(), support_less);
  std::vector<RoleSet> out;
  for (auto& c : cands) {
    bool covered = std::any_of(out.begin(), out.end(), [&](const RoleSet& k) {
      return std::includes(c.begin(), c.end(), k.begin(), k.end());
    });
    if (!covered) out.push_back(std::move(c));
  }
  return out;
}

std::vector<RoleSet> candidates(const JustifiedSemantics& js,
                                const Principal& member, const RoleExpr& e) {
  switch (e.kind()) {
    case RoleExpr::Kind::kPrincipals:
      if (e.members().count(member) != 0) return {RoleSet{}};
      return {};
    case RoleExpr::Kind::kRole:
      return js.supports(e.role_ref(), member);
    case RoleExpr::Kind::kUnion: {
      auto out = candidates(js, member, e.left());
      auto right = candidates(js, member, e.right());
      out.insert(out.end(), right.begin(), right.end());
      return reduce_minimal(std::move(out));
    }
    case RoleExpr::Kind::kIntersection: {
      auto left = candidates(js, member, e.left());
      auto right = candidates(js, member, e.right());
      std::vector<RoleSet> out;
      for (const auto& l : left) {
        for (const auto& r : right) {
          RoleSet u = l;
          u.insert(r.begin(), r.end());
          out.push_back(std::move(u));
        }
      }
      return reduce_minimal(std::move(out));
    }
  }
  return {};
}

using Atom = std::pair<Role, Principal>;

struct Derivation {
  const Statement* statement;
  std::vector<Atom> premises;
};

// Naive evaluation that remembers the first way each atom was derived.
class ProvenanceEval {
 public:
  explicit ProvenanceEval(const PolicyState& p) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& s : p) changed |= fire(s);
    }
  }

  bool holds(const Role& r, const Principal& z) const {
    return proof_.count({r, z}) != 0;
  }

  void trace(const Atom& a, std::set<Statement>& out) const {
    std::vector<Atom> stack{a};
    std::set<Atom> seen;
    while (!stack.empty()) {
      Atom cur = stack.back();
      stack.pop_back();
      if (!seen.insert(cur).second) continue;
      const Derivation& d = proof_.at(cur);
      out.insert(*d.statement);
      for (const auto& pr : d.premises) stack.push_back(pr);
    }
  }

 private:
  std::vector<Principal> members(const Role& r) const {
    auto it = members_.find(r);
    if (it == members_.end()) return {};
    return {it->second.begin(), it->second.end()};
  }

  bool derive(const Role& head, const Principal& z, const Statement& s,
              std::vector<Atom> premises) {
    if (!members_[head].insert(z).second) return false;
    proof_.emplace(Atom{head, z}, Derivation{&s, std::move(premises)});
    return true;
  }

  bool fire(const Statement& s) {
    bool changed = false;
    const Role& head = s.head();
    switch (s.kind()) {
      case StatementKind::kMember:
        changed |= derive(head, std::get<SimpleMember>(s.body()).member, s, {});
        break;
      case StatementKind::kInclusion: {
        const auto& src = std::get<SimpleInclusion>(s.body()).source;
        for (const auto& z : members(src)) changed |= derive(head, z, s, {{src, z}});
        break;
      }
      case StatementKind::kLinking: {
        const auto& b = std::get<LinkingInclusion>(s.body());
        for (const auto& y : members(b.first)) {
          Role link(y, b.second);
          for (const auto& z : members(link)) {
            changed |= derive(head, z, s, {{b.first, y}, {link, z}});
          }
        }
        break;
      }
      case StatementKind::kIntersection: {
        const auto& parts = std::get<IntersectionInclusion>(s.body()).parts;
        for (const auto& z : members(parts[0])) {
          bool everywhere = std::all_of(parts.begin(), parts.end(), [&](const Role& q) {
            auto it = members_.find(q);
            return it != members_.end() && it->second.count(z) != 0;
          });
          if (!everywhere) continue;
          std::vector<Atom> premises;
          for (const auto& q : parts) premises.emplace_back(q, z);
          changed |= derive(head, z, s, std::move(premises));
        }
        break;
      }
    }
    return changed;
  }

  MembershipMap members_;
  std::map<Atom, Derivation> proof_;
};

std::optional<std::set<Statement>> expr_proof(const ProvenanceEval& ev,
                                              const Principal& member,
                                              const RoleExpr& e) {
  switch (e.kind()) {
    case RoleExpr::Kind::kPrincipals:
      if (e.members().count(member) != 0) return std::set<Statement>{};
      return std::nullopt;
    case RoleExpr::Kind::kRole: {
      if (!ev.holds(e.role_ref(), member)) return std::nullopt;
      std::set<Statement> out;
      ev.trace({e.role_ref(), member}, out);
      return out;
    }
    case RoleExpr::Kind::kUnion: {
      auto l = expr_proof(ev, member, e.left());
      auto r = expr_proof(ev, member, e.right());
      if (l && (!r || l->size() <= r->size())) return l;
      return r;
    }
    case RoleExpr::Kind::kIntersection: {
      auto l = expr_proof(ev, member, e.left());
      auto r = expr_proof(ev, member, e.right());
      if (!l || !r) return std::nullopt;
      l->insert(r->begin(), r->end());
      return l;
    }
  }
  return std::nullopt;
}

}  // namespace

const std::vector<JustifiedEntry>& JustifiedSemantics::entries(
    const Role& r) const {
  auto it = table.find(r);
  return it == table.end() ? kNoEntries : it->second;
}

std::vector<RoleSet> JustifiedSemantics::supports(
    const Role& r, const Principal& member) const {
  std::vector<RoleSet> out;
  for (const auto& e : entries(r)) {
    if (e.member == member) out.push_back(e.support);
  }
  return out;
}

JustifiedSemantics justified_semantics(const PolicyState& p,
                                       const JustifiedOptions& opts) {
  return Worklist(p, opts).run();
}

std::vector<RoleSupport> minimal_supports(const PolicyState& p,
                                          const Principal& member,
                                          const Role& target,
                                          const JustifiedOptions& opts) {
  std::vector<RoleSupport> out;
  for (auto& s : justified_semantics(p, opts).supports(target, member)) {
    out.push_back({std::move(s)});
  }
  return out;
}

NoSupportError::NoSupportError(Principal member)
    : std::runtime_error("no support for member '" + member.name + "'"),
      member_(std::move(member)) {}

std::vector<RoleSet> expr_supports(const PolicyState& p,
                                   const Principal& member,
                                   const RoleExpr& rhs,
                                   const std::optional<RoleSet>& admissible,
                                   const JustifiedOptions& opts) {
  PolicyState q = admissible ? restrict_state(p, *admissible) : p;
  return candidates(justified_semantics(q, opts), member, rhs);
}

RoleSupport support_for_constraint(const PolicyState& p,
                                   const PrincipalSet& members,
                                   const RoleExpr& rhs,
                                   const std::optional<RoleSet>& admissible,
                                   const JustifiedOptions& opts) {
  RoleSupport out;
  if (members.empty()) return out;
  PolicyState q = admissible ? restrict_state(p, *admissible) : p;
  JustifiedSemantics js = justified_semantics(q, opts);
  for (const auto& m : members) {
    auto cands = candidates(js, m, rhs);
    if (cands.empty()) throw NoSupportError(m);
    out.roles.insert(cands.front().begin(), cands.front().end());
  }
  return out;
}

std::set<Statement> derivation_statements(const PolicyState& p,
                                          const PrincipalSet& members,
                                          const RoleExpr& rhs) {
  std::set<Statement> out;
  if (members.empty()) return out;
  ProvenanceEval ev(p);
  for (const auto& m : members) {
    auto proof = expr_proof(ev, m, rhs);
    if (!proof) throw NoSupportError(m);
    out.insert(proof->begin(), proof->end());
  }
  return out;
}

CredentialSupport credential_support_for_constraint(
    const PolicyState& p, const PrincipalSet& members, const RoleExpr& rhs,
    const JustifiedOptions& opts) {
  RoleSupport sigma = support_for_constraint(p, members, rhs, {}, opts);
  return {derivation_statements(restrict_state(p, sigma.roles), members, rhs)};
}

}  // namespace rtmon
