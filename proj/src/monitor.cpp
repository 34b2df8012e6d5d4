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

#include "rtmon/monitor.hpp"

#include <algorithm>

#include "rtmon/analysis.hpp"
#include "rtmon/engine.hpp"

namespace rtmon {

const char* to_string(MonitorMode::Kind k) {
  switch (k) {
    case MonitorMode::Kind::kFullTrust: return "full-trust";
    case MonitorMode::Kind::kFullTrustCredential: return "full-trust-credential";
    case MonitorMode::Kind::kRestrictedTrust: return "restricted-trust";
  }
  return "full-trust";
}

const char* to_string(RecordStatus s) {
  switch (s) {
    case RecordStatus::kHolding: return "holding";
    case RecordStatus::kViolated: return "violated";
    case RecordStatus::kBoundViolated: return "bound-violated";
    case RecordStatus::kUnestablished: return "unestablished";
  }
  return "holding";
}

const char* to_string(Warning::Cause c) {
  switch (c) {
    case Warning::Cause::kGrowthSideAdd: return "growth-side-add";
    case Warning::Cause::kSupportSideRemove: return "support-side-remove";
    case Warning::Cause::kRecheck: return "recheck";
  }
  return "recheck";
}

const char* to_string(Warning::Outcome o) {
  switch (o) {
    case Warning::Outcome::kStillHolds: return "still-holds";
    case Warning::Outcome::kNowViolated: return "now-violated";
    case Warning::Outcome::kBoundNowViolated: return "bound-now-violated";
  }
  return "still-holds";
}

namespace {

MonitorRecord register_full(const PolicyState& p, MonitorRecord rec,
                            const MonitorOptions& opts) {
  SemanticsIndex idx = evaluate(p);
  ConstraintCheck c = check_constraint(idx, rec.constraint);
  if (!c.satisfied) {
    rec.status = RecordStatus::kViolated;
    rec.violators = c.violators;
    return rec;
  }
  rec.gamma_cache = gamma_expr(p, idx, rec.constraint.lhs);
  try {
    rec.support_cache = support_for_constraint(p, c.lhs_members,
                                               rec.constraint.rhs, {},
                                               opts.supports)
                            .roles;
    if (rec.mode.kind == MonitorMode::Kind::kFullTrustCredential) {
      rec.credential_cache = derivation_statements(
          restrict_state(p, rec.support_cache), c.lhs_members,
          rec.constraint.rhs);
    }
  } catch (const NoSupportError& e) {
    rec.status = RecordStatus::kUnestablished;
    rec.violators = {e.member()};
  }
  return rec;
}

MonitorRecord register_restricted(const PolicyState& p, MonitorRecord rec,
                                  const MonitorOptions& opts) {
  rec.bound_monitor = rec.mode.monitor.bind(p);
  const RoleSet& g = rec.bound_monitor.growth_trusted.roles;
  const RoleSet& s = rec.bound_monitor.shrink_trusted.roles;
  BoundIndex b = bounds(p, rec.bound_monitor);
  BoundedCheck bc = check_bounded_containment(b, rec.constraint);
  rec.core_roles = core(p, g, b);
  rec.gamma_cache =
      gamma_restricted_expr(p, rec.core_roles, b, rec.constraint.lhs);
  const RoleSet lhs_roles = rec.constraint.lhs.roles();
  rec.gamma_complete =
      std::all_of(lhs_roles.begin(), lhs_roles.end(),
                  [&](const Role& r) { return rec.core_roles.count(r) != 0; });
  if (!bc.holds) {
    // Failures that disappear once every role is shrink-trusted are a
    // missing support inside S, not a reachable violation.
    PrincipalSet exact_rhs = eval_expr(evaluate(p), rec.constraint.rhs);
    bool only_support = std::all_of(
        bc.witnesses.begin(), bc.witnesses.end(), [&](const Principal& w) {
          return !is_top(w) && exact_rhs.count(w) != 0;
        });
    rec.status = only_support ? RecordStatus::kUnestablished
                              : RecordStatus::kBoundViolated;
    rec.violators = bc.witnesses;
    return rec;
  }
  try {
    rec.support_cache = support_for_constraint(p, bc.upper_lhs,
                                               rec.constraint.rhs, s,
                                               opts.supports)
                            .roles;
  } catch (const NoSupportError& e) {
    rec.status = RecordStatus::kUnestablished;
    rec.violators = {e.member()};
  }
  return rec;
}

Warning::Outcome outcome_of(RecordStatus s) {
  switch (s) {
    case RecordStatus::kHolding: return Warning::Outcome::kStillHolds;
    case RecordStatus::kViolated: return Warning::Outcome::kNowViolated;
    case RecordStatus::kBoundViolated:
    case RecordStatus::kUnestablished:
      return Warning::Outcome::kBoundNowViolated;
  }
  return Warning::Outcome::kStillHolds;
}

// Core of apply_change once the post-state is known.
std::optional<Warning> react(MonitorRecord& rec, const PolicyState& post,
                             const ChangeEvent& ev,
                             const MonitorOptions& opts) {
  Warning::Cause cause;
  if (rec.status != RecordStatus::kHolding || !rec.gamma_complete) {
    cause = Warning::Cause::kRecheck;
  } else if (classify(rec, ev) == Classification::kIgnorable) {
    return std::nullopt;
  } else {
    cause = ev.kind == ChangeEvent::Kind::kAdd
                ? Warning::Cause::kGrowthSideAdd
                : Warning::Cause::kSupportSideRemove;
  }
  rec = register_constraint(post, rec.constraint, rec.mode, opts);
  Warning w{.constraint_id = rec.constraint.id, .cause = cause, .event = ev};
  w.outcome = outcome_of(rec.status);
  if (w.outcome != Warning::Outcome::kStillHolds) w.violators = rec.violators;
  w.recomputed = true;
  w.status_after = rec.status;
  w.gamma_after = rec.gamma_cache;
  w.support_after = rec.support_cache;
  w.credential_after = rec.credential_cache;
  return w;
}

}  // namespace

MonitorRecord register_constraint(const PolicyState& p, const Constraint& q,
                                  const MonitorMode& mode,
                                  const MonitorOptions& opts) {
  MonitorRecord rec;
  rec.constraint = q;
  rec.mode = mode;
  if (mode.kind == MonitorMode::Kind::kRestrictedTrust) {
    return register_restricted(p, std::move(rec), opts);
  }
  return register_full(p, std::move(rec), opts);
}

Classification classify(const MonitorRecord& rec, const ChangeEvent& ev) {
  if (rec.status != RecordStatus::kHolding) {
    throw StaleRecordError("constraint '" + rec.constraint.id +
                           "' is not holding (" + to_string(rec.status) + ")");
  }
  if (!rec.gamma_complete) return Classification::kTriggering;
  const Role& head = ev.statement.head();
  if (ev.kind == ChangeEvent::Kind::kAdd) {
    return rec.gamma_cache.count(head) != 0 ? Classification::kTriggering
                                            : Classification::kIgnorable;
  }
  if (rec.mode.kind == MonitorMode::Kind::kFullTrustCredential) {
    return rec.credential_cache.count(ev.statement) != 0
               ? Classification::kTriggering
               : Classification::kIgnorable;
  }
  return rec.support_cache.count(head) != 0 ? Classification::kTriggering
                                            : Classification::kIgnorable;
}

PolicyState apply_event(const PolicyState& p, const ChangeEvent& ev,
                        bool* changed) {
  PolicyState out = p;
  bool did = ev.kind == ChangeEvent::Kind::kAdd ? out.insert(ev.statement)
                                                : out.erase(ev.statement);
  if (changed != nullptr) *changed = did;
  return out;
}

ChangeResult apply_change(const MonitorRecord& rec, const PolicyState& p,
                          const ChangeEvent& ev, const MonitorOptions& opts) {
  ChangeResult out;
  bool changed = false;
  out.new_state = apply_event(p, ev, &changed);
  out.record = rec;
  out.no_op = !changed;
  if (changed) out.warning = react(out.record, out.new_state, ev, opts);
  return out;
}

SessionResult run_session(
    const PolicyState& p,
    const std::vector<std::pair<Constraint, MonitorMode>>& constraints,
    const std::vector<ChangeEvent>& log, const MonitorOptions& opts) {
  SessionResult out;
  out.final_state = p;
  for (const auto& [q, mode] : constraints) {
    out.records.push_back(register_constraint(p, q, mode, opts));
  }
  for (std::size_t i = 0; i < log.size(); ++i) {
    bool changed = false;
    PolicyState post = apply_event(out.final_state, log[i], &changed);
    if (!changed) {
      ++out.no_op_events;
      continue;
    }
    for (auto& rec : out.records) {
      if (auto w = react(rec, post, log[i], opts)) {
        w->event_index = i;
        out.warnings.push_back(std::move(*w));
      }
    }
    out.final_state = std::move(post);
  }
  return out;
}

}  // namespace rtmon
