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

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "../support/oracle.hpp"
#include "../support/properties.hpp"
#include "rtmon/analysis.hpp"
#include "rtmon/cli.hpp"
#include "rtmon/deps.hpp"
#include "rtmon/engine.hpp"
#include "rtmon/monitor.hpp"
#include "rtmon/parser.hpp"

using namespace rtmon;
using namespace rtmon::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (!ok) {
      pass_ = false;
      if (!failed_.empty()) failed_ += "; ";
      failed_ += what;
    }
  }
  Outcome done(const std::string& summary) const {
    if (pass_) return {true, summary};
    return {false, summary + "; failed: " + failed_};
  }
  std::size_t total() const { return total_; }

 private:
  bool pass_ = true;
  std::size_t total_ = 0;
  std::string failed_;
};

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f s", s);
  return buf;
}

Outcome criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  SemanticsIndex p = evaluate(hazmat_policy());
  SemanticsIndex q = evaluate(hazmat_policy_extended());
  double elapsed = seconds_since(t0);
  struct Line {
    const SemanticsIndex* idx;
    const char* role;
    std::vector<std::string> members;
  };
  const std::vector<Line> lines{
      {&p, "ATF.hazmatDB", {"Rollins"}},
      {&p, "ATF.hazmatTraining", {"Rollins", "Burke", "O'Connel"}},
      {&p, "Emergency.hazmatPersonnel", {}},
      {&p, "Emergency.responsePersonnel", {}},
      {&p, "Emergency.dept", {"Fire", "Police"}},
      {&q, "ATF.hazmatDB", {"Rollins"}},
      {&q, "ATF.hazmatTraining", {"Rollins", "Burke", "O'Connel"}},
      {&q, "Emergency.hazmatPersonnel", {"Rollins", "Burke"}},
      {&q, "Emergency.responsePersonnel", {"Rollins", "Burke"}},
      {&q, "Emergency.dept", {"Fire", "Police"}},
      {&q, "Police.responsePersonnel", {"Rollins", "Burke"}},
  };
  Checker c;
  std::size_t matched = 0;
  for (const auto& l : lines) {
    bool ok = l.idx->members(role(l.role)) == principals(l.members);
    matched += ok;
    c.expect(ok, l.role);
  }
  c.expect(elapsed < 1.0, "runtime " + fmt_seconds(elapsed));
  return c.done(std::to_string(matched) + "/11 semantics lines match, " +
                fmt_seconds(elapsed));
}

Outcome criterion2() {
  SessionResult s = run_session(hazmat_policy(), {{hazmat_constraint(), MonitorMode::full_trust()}},
                                {ChangeEvent::add(rollins_responder()), ChangeEvent::add(burke_responder())});
  Checker c;
  c.expect(s.warnings.size() == 2, "expected two warnings");
  if (s.warnings.size() == 2) {
    c.expect(s.warnings[0].outcome == Warning::Outcome::kStillHolds, "first still-holds");
    c.expect(s.warnings[1].outcome == Warning::Outcome::kNowViolated, "second now-violated");
    c.expect(s.warnings[1].violators == principals({"Burke"}), "violators {Burke}");
  }
  std::string seq;
  for (const auto& w : s.warnings) {
    seq += std::string(seq.empty() ? "" : ", ") + to_string(w.outcome);
    if (!w.violators.empty()) seq += " " + to_string(w.violators);
  }
  return c.done("warnings: " + seq);
}

Outcome criterion3() {
  Checker c;
  PolicyState e2 = linked_policy();
  c.expect(evaluate(e2).members(role("A.r")) == principals({"B", "C"}), "[A.r] = {B, C}");
  PolicyState e2b = e2;
  e2b.insert(stmt("D.r <- E"));
  c.expect(evaluate(e2b).members(role("A.r")) == principals({"B", "C", "E", "F"}),
           "[A.r] after + D.r <- E");
  c.expect(gamma(e2, role("A.r")) == roles({"A.r", "B.r", "C.r", "D.r"}), "gamma(A.r)");
  c.expect(gamma(hazmat_policy(), role("Emergency.hazmatPersonnel")) ==
               roles({"Emergency.hazmatPersonnel", "Emergency.responsePersonnel",
                      "ATF.hazmatTraining", "Emergency.dept", "Fire.responsePersonnel",
                      "Police.responsePersonnel"}),
           "gamma(Emergency.hazmatPersonnel)");
  PolicyState link = parse_policy("A.r0 <- A.r1.r2\n");
  c.expect(gamma(link, role("A.r0")) == roles({"A.r0", "A.r1"}), "gamma(A.r0) before");
  link.insert(stmt("A.r1 <- B"));
  c.expect(gamma(link, role("A.r0")) == roles({"A.r0", "A.r1", "B.r2"}), "gamma(A.r0) after");
  return c.done(std::to_string(c.total()) + " set equalities");
}

Outcome criterion4() {
  Checker c;
  PolicyState p = two_path_policy();
  std::set<RoleSet> got;
  for (const auto& s : minimal_supports(p, Principal("F"), role("A.r"), {0})) got.insert(s.roles);
  c.expect(got == std::set<RoleSet>{roles({"A.r", "B.r"}), roles({"A.r", "C.r"})},
           "minimal supports");
  Constraint q = parse_constraint("constraint f owner A: {F} <= A.r");
  SessionResult s = run_session(p, {{q, MonitorMode::full_trust()}},
                                {ChangeEvent::remove(stmt("B.r <- F"))});
  c.expect(s.warnings.size() == 1, "one warning");
  if (s.warnings.size() == 1) {
    c.expect(s.warnings[0].outcome == Warning::Outcome::kStillHolds, "still-holds");
    c.expect(s.warnings[0].support_after == roles({"A.r", "C.r"}), "support {A.r, C.r}");
  }
  return c.done("supports " + std::to_string(got.size()) + ", recomputed support " +
                (s.warnings.empty() ? std::string("-") : to_string(s.warnings[0].support_after)));
}

Outcome criterion5() {
  Checker c;
  PolicyState p = chain_policy();
  Constraint q = parse_constraint("constraint a owner A: A.r <= B.r");
  MonitorRecord rec = register_constraint(p, q, MonitorMode::full_trust());
  c.expect(rec.support_cache == roles({"B.r", "C.r"}), "initial support");
  SessionResult s = run_session(p, {{q, MonitorMode::full_trust()}},
                                {ChangeEvent::add(stmt("A.r <- F"))});
  c.expect(s.warnings.size() == 1, "one warning");
  if (s.warnings.size() == 1) {
    c.expect(s.warnings[0].cause == Warning::Cause::kGrowthSideAdd, "growth-side add");
    c.expect(s.warnings[0].outcome == Warning::Outcome::kStillHolds, "still-holds");
    c.expect(s.warnings[0].support_after == roles({"B.r", "C.r", "D.r"}), "new support");
  }
  return c.done("initial support " + to_string(rec.support_cache) + ", after add " +
                (s.warnings.empty() ? std::string("-") : to_string(s.warnings[0].support_after)));
}

Outcome criterion6() {
  Checker c;
  PolicyState p = hazmat_policy();
  RoleMonitor m = partial_monitor();
  RoleSet core_roles = core(p, m.growth_trusted.roles);
  c.expect(!core_roles.count(role("Emergency.responsePersonnel")),
           "Emergency.responsePersonnel outside core");
  RoleSet gg = gamma_restricted(p, m.growth_trusted.roles, role("Emergency.hazmatPersonnel"));
  c.expect(gg == roles({"Emergency.hazmatPersonnel", "ATF.hazmatTraining"}),
           "restricted growth set");

  std::ostringstream out;
  std::ostringstream err;
  const std::string data = RTMON_DATA_DIR;
  int code = cli::run({"--format", "machine", "analyze", data + "/hazmat.rt",
                       data + "/hazmat.constraints", data + "/hazmat_partial.monitor"},
                      out, err);
  nlohmann::json report = nlohmann::json::parse(out.str(), nullptr, false);
  bool holds = false;
  std::string bound_text = "no report";
  if (!report.is_discarded() && report.contains("result")) {
    const auto& item = report["result"]["constraints"][0];
    holds = item["bound_holds"].get<bool>();
    bound_text = "upper(lhs) " + item["upper_lhs"].dump() + " vs lower(rhs) " +
                 item["lower_rhs"].dump() + ", witnesses " + item["witnesses"].dump();
  }
  c.expect(holds, "analyze reports bound holds (" + bound_text + ")");
  return c.done("core and restricted growth set checked, analyze exit " +
                std::to_string(code));
}

Outcome from_results(const std::vector<PropertyResult>& rs, std::size_t min_cases,
                     double elapsed, double limit) {
  Checker c;
  std::string summary;
  std::size_t cases = 0;
  for (const auto& r : rs) {
    cases += r.cases;
    c.expect(r.cases >= min_cases,
             r.name + ": only " + std::to_string(r.cases) + " cases");
    c.expect(r.ok(), r.name + ": " + std::to_string(r.failures) + " failures, first " +
                         r.first_failure);
  }
  if (limit > 0) c.expect(elapsed < limit, "runtime " + fmt_seconds(elapsed));
  summary = std::to_string(rs.size()) + " properties, " + std::to_string(cases) +
            " cases, " + fmt_seconds(elapsed);
  return c.done(summary);
}

Outcome criterion7() {
  auto t0 = std::chrono::steady_clock::now();
  PropertyResult r = js_matches_bruteforce(7007, 500);
  return from_results({r}, 500, seconds_since(t0), 60.0);
}

Outcome criterion8() {
  auto t0 = std::chrono::steady_clock::now();
  auto rs = semantic_properties(8008, 1000);
  return from_results(rs, 1000, seconds_since(t0), 0);
}

Outcome criterion9() {
  auto t0 = std::chrono::steady_clock::now();
  auto rs = silence_properties(9009, 300);
  return from_results(rs, 300, seconds_since(t0), 0);
}

Outcome criterion10() {
  auto t0 = std::chrono::steady_clock::now();
  PropertyResult r = bounded_reachability(1010, 100);
  Outcome o = from_results({r}, 50, seconds_since(t0), 0);
  o.detail += ", " + std::to_string(r.checks) + " reachable states";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"hazmat policy reproduction", criterion1},
      {"hazmat monitoring scenario", criterion2},
      {"linked policy semantics and growth sets", criterion3},
      {"two-path supports and recomputation", criterion4},
      {"chain policy monitoring", criterion5},
      {"partial monitor bounded analysis", criterion6},
      {"justified semantics against brute force", criterion7},
      {"monotonicity and lemma properties", criterion8},
      {"soundness of silence", criterion9},
      {"bounded reachability spot-check", criterion10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o = criteria[i].second();
    failures += !o.pass;
    std::cout << "criterion " << (i + 1) << ": " << (o.pass ? "PASS" : "FAIL") << " - "
              << criteria[i].first << " (" << o.detail << ")\n";
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size()
            << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
