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

#include "report.hpp"

#include <algorithm>
#include <cstdio>

#include "rtmon/parser.hpp"

namespace rtmon::cli {

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string inputs_digest(const std::vector<std::string>& documents) {
  std::uint64_t h = fnv1a64("");
  for (const auto& d : documents) {
    h = fnv1a64(std::to_string(d.size()) + ":", h);
    h = fnv1a64(d, h);
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

Json to_json(const PrincipalSet& s) {
  Json out = Json::array();
  for (const auto& p : s) out.push_back(p.name);
  return out;
}

Json to_json(const RoleSet& s) {
  Json out = Json::array();
  for (const auto& r : s) out.push_back(r.str());
  return out;
}

namespace {

std::vector<std::string> sorted_text(const std::set<Statement>& s) {
  std::vector<std::string> out;
  for (const auto& st : s) out.push_back(st.str());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Json to_json(const std::set<Statement>& s) {
  Json out = Json::array();
  for (auto& t : sorted_text(s)) out.push_back(std::move(t));
  return out;
}

Json to_json(const ChangeEvent& ev) {
  return Json{{"op", ev.kind == ChangeEvent::Kind::kAdd ? "add" : "remove"},
              {"statement", ev.statement.str()}};
}

Json monitor_json(const RoleMonitor& m) {
  auto side = [](const TrustSet& t) -> Json {
    if (t.all) return "*";
    return to_json(t.roles);
  };
  return Json{{"growth_trusted", side(m.growth_trusted)},
              {"shrink_trusted", side(m.shrink_trusted)}};
}

Json to_json(const MonitorRecord& rec) {
  Json out;
  out["id"] = rec.constraint.id;
  out["mode"] = to_string(rec.mode.kind);
  out["status"] = to_string(rec.status);
  out["violators"] = to_json(rec.violators);
  out["gamma"] = to_json(rec.gamma_cache);
  out["gamma_complete"] = rec.gamma_complete;
  out["support"] = to_json(rec.support_cache);
  if (rec.mode.kind == MonitorMode::Kind::kFullTrustCredential) {
    out["credential_support"] = to_json(rec.credential_cache);
  }
  return out;
}

Json to_json(const Warning& w) {
  Json out;
  out["event_index"] = w.event_index + 1;
  out["event"] = to_json(w.event);
  out["constraint"] = w.constraint_id;
  out["cause"] = to_string(w.cause);
  out["outcome"] = to_string(w.outcome);
  out["violators"] = to_json(w.violators);
  out["recomputed"] = w.recomputed;
  out["status_after"] = to_string(w.status_after);
  out["gamma_after"] = to_json(w.gamma_after);
  out["support_after"] = to_json(w.support_after);
  if (!w.credential_after.empty()) {
    out["credential_support_after"] = to_json(w.credential_after);
  }
  return out;
}

std::string event_text(const ChangeEvent& ev) {
  return (ev.kind == ChangeEvent::Kind::kAdd ? "+ " : "- ") + ev.statement.str();
}

std::string statements_text(const std::set<Statement>& s) {
  std::string out = "[";
  bool first = true;
  for (const auto& t : sorted_text(s)) {
    if (!first) out += "; ";
    first = false;
    out += t;
  }
  return out + "]";
}

namespace {

std::string caches_text(RecordStatus status, const PrincipalSet& violators,
                        const RoleSet& gamma, const RoleSet& support,
                        const std::set<Statement>& creds, bool credential) {
  std::string out = to_string(status);
  if (status != RecordStatus::kHolding) {
    return out + " " + to_string(violators);
  }
  out += "; gamma " + to_string(gamma) + "; support " + to_string(support);
  if (credential) out += "; credentials " + statements_text(creds);
  return out;
}

}  // namespace

std::string warning_line(const Warning& w) {
  std::string out = "#" + std::to_string(w.event_index + 1) + " " +
                    event_text(w.event) + ": " + w.constraint_id + " " +
                    to_string(w.cause) + " -> " + to_string(w.outcome);
  if (w.outcome != Warning::Outcome::kStillHolds) {
    return out + " " + to_string(w.violators);
  }
  out += "; gamma " + to_string(w.gamma_after) + "; support " +
         to_string(w.support_after);
  if (!w.credential_after.empty()) {
    out += "; credentials " + statements_text(w.credential_after);
  }
  return out;
}

std::string record_line(const MonitorRecord& rec) {
  return rec.constraint.id + ": " +
         caches_text(rec.status, rec.violators, rec.gamma_cache,
                     rec.support_cache, rec.credential_cache,
                     rec.mode.kind == MonitorMode::Kind::kFullTrustCredential);
}

}  // namespace rtmon::cli
