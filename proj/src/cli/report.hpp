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

#ifndef RTMON_CLI_REPORT_HPP
#define RTMON_CLI_REPORT_HPP

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rtmon/model.hpp"
#include "rtmon/monitor.hpp"

namespace rtmon::cli {

using Json = nlohmann::ordered_json;

/// Schema version of machine reports.
inline constexpr int kReportVersion = 1;

std::uint64_t fnv1a64(std::string_view data,
                      std::uint64_t seed = 0xcbf29ce484222325ULL);
/// Digest over a sequence of documents, length-prefixed so that moving
/// bytes between documents changes it.
std::string inputs_digest(const std::vector<std::string>& documents);

Json to_json(const PrincipalSet& s);
Json to_json(const RoleSet& s);
Json to_json(const std::set<Statement>& s);
Json to_json(const ChangeEvent& ev);
Json to_json(const MonitorRecord& rec);
Json to_json(const Warning& w);
Json monitor_json(const RoleMonitor& m);

std::string event_text(const ChangeEvent& ev);
std::string statements_text(const std::set<Statement>& s);

/// One line per warning, without trailing newline.
std::string warning_line(const Warning& w);
/// One line describing a record's status and caches.
std::string record_line(const MonitorRecord& rec);

}  // namespace rtmon::cli

#endif  // RTMON_CLI_REPORT_HPP
