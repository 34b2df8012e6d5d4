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

#ifndef RTMON_MONITOR_HPP
#define RTMON_MONITOR_HPP

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rtmon/deps.hpp"
#include "rtmon/model.hpp"

namespace rtmon {

struct MonitorMode {
  enum class Kind { kFullTrust, kFullTrustCredential, kRestrictedTrust };

  Kind kind = Kind::kFullTrust;
  /// Only meaningful for kRestrictedTrust; `*` sides are expanded against
  /// the state each time the record is (re)built.
  RoleMonitor monitor;

  static MonitorMode full_trust() { return {}; }
  static MonitorMode credential() { return {Kind::kFullTrustCredential, {}}; }
  static MonitorMode restricted(RoleMonitor m) {
    return {Kind::kRestrictedTrust, std::move(m)};
  }

  friend bool operator==(const MonitorMode&, const MonitorMode&) = default;
};

const char* to_string(MonitorMode::Kind k);

enum class RecordStatus { kHolding, kViolated, kBoundViolated, kUnestablished };

const char* to_string(RecordStatus s);

struct MonitorRecord {
  Constraint constraint;
  MonitorMode mode;
  RecordStatus status = RecordStatus::kHolding;
  /// Growth frontier: additions with a head here trigger.
  RoleSet gamma_cache;
  /// False when some role of the lhs lies outside the core; every change
  /// then triggers a re-check.
  bool gamma_complete = true;
  /// Role support; removals with a head here trigger (role modes).
  RoleSet support_cache;
  /// Credential support; removals of these statements trigger
  /// (credential mode).
  std::set<Statement> credential_cache;
  /// Violators, bound witnesses or the member lacking support.
  PrincipalSet violators;
  /// The (G, S) pair the record was built against (restricted mode).
  RoleMonitor bound_monitor;
  /// Core of G at build time (restricted mode).
  RoleSet core_roles;
};

struct MonitorOptions {
  JustifiedOptions supports;
};

MonitorRecord register_constraint(const PolicyState& p, const Constraint& q,
                                  const MonitorMode& mode,
                                  const MonitorOptions& opts = {});

enum class Classification { kIgnorable, kTriggering };

class StaleRecordError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Decides whether an event can affect a holding record. Throws
/// StaleRecordError unless the record is holding.
Classification classify(const MonitorRecord& rec, const ChangeEvent& ev);

struct Warning {
  enum class Cause { kGrowthSideAdd, kSupportSideRemove, kRecheck };
  enum class Outcome { kStillHolds, kNowViolated, kBoundNowViolated };

  std::string constraint_id;
  Cause cause = Cause::kRecheck;
  ChangeEvent event;
  std::size_t event_index = 0;
  Outcome outcome = Outcome::kStillHolds;
  PrincipalSet violators{};
  bool recomputed = true;
  RecordStatus status_after = RecordStatus::kHolding;
  RoleSet gamma_after{};
  RoleSet support_after{};
  std::set<Statement> credential_after{};
};

const char* to_string(Warning::Cause c);
const char* to_string(Warning::Outcome o);

struct ChangeResult {
  PolicyState new_state;
  std::optional<Warning> warning;
  MonitorRecord record;
  /// True when the event left the state unchanged.
  bool no_op = false;
};

PolicyState apply_event(const PolicyState& p, const ChangeEvent& ev,
                        bool* changed = nullptr);

ChangeResult apply_change(const MonitorRecord& rec, const PolicyState& p,
                          const ChangeEvent& ev,
                          const MonitorOptions& opts = {});

struct SessionResult {
  PolicyState final_state;
  std::vector<Warning> warnings;
  std::vector<MonitorRecord> records;
  std::size_t no_op_events = 0;
};

SessionResult run_session(
    const PolicyState& p,
    const std::vector<std::pair<Constraint, MonitorMode>>& constraints,
    const std::vector<ChangeEvent>& log, const MonitorOptions& opts = {});

}  // namespace rtmon

#endif  // RTMON_MONITOR_HPP
