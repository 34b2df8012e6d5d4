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

#include "rtmon/cli.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "report.hpp"
#include "rtmon/analysis.hpp"
#include "rtmon/deps.hpp"
#include "rtmon/engine.hpp"
#include "rtmon/monitor.hpp"
#include "rtmon/parser.hpp"

namespace rtmon::cli {

namespace {

struct InputError {
  std::string message;
  Json detail;
};

struct Report {
  Json result = Json::object();
  std::string human;
  int exit_code = kExitOk;
};

// Loads and parses input documents, remembering their bytes for the digest.
class Inputs {
 public:
  std::string read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw InputError{"cannot read '" + path + "'",
                       Json{{"file", path}, {"kind", "io"}}};
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    documents_.push_back(ss.str());
    return documents_.back();
  }

  template <class T>
  T parse(const std::string& path, const std::string& text,
          const std::function<T(std::string_view)>& parser) {
    try {
      return parser(text);
    } catch (const ParseError& e) {
      throw InputError{path + ":" + std::to_string(e.span().line) + ":" +
                           std::to_string(e.span().column) + ": " +
                           to_string(e.kind()) + ": " + e.detail(),
                       Json{{"file", path},
                            {"kind", to_string(e.kind())},
                            {"line", e.span().line},
                            {"column", e.span().column},
                            {"length", e.span().length},
                            {"message", e.detail()}}};
    }
  }

  PolicyState policy(const std::string& path) {
    return parse<PolicyState>(path, read(path), parse_policy);
  }
  std::vector<Constraint> constraints(const std::string& path) {
    return parse<std::vector<Constraint>>(path, read(path), parse_constraints);
  }
  RoleMonitor monitor(const std::string& path) {
    return parse<RoleMonitor>(path, read(path), parse_monitor);
  }
  std::vector<ChangeEvent> changelog(const std::string& path) {
    return parse<std::vector<ChangeEvent>>(path, read(path), parse_changelog);
  }
  RoleExpr expression(const std::string& text) {
    documents_.push_back(text);
    return parse<RoleExpr>("<expression>", text, parse_expr);
  }

  std::string digest() const { return inputs_digest(documents_); }

 private:
  std::vector<std::string> documents_;
};

std::string lines(const PrincipalSet& s) {
  if (s.empty()) return "(empty)\n";
  std::string out;
  for (const auto& p : s) out += p.name + "\n";
  return out;
}

Report cmd_query(Inputs& in, const std::string& policy_path,
                 const std::string& expr_text) {
  PolicyState p = in.policy(policy_path);
  RoleExpr e = in.expression(expr_text);
  PrincipalSet members = eval_expr(evaluate(p), e);
  Report r;
  r.result["expression"] = serialize_expr(e);
  r.result["members"] = to_json(members);
  r.human = lines(members);
  return r;
}

Report cmd_check(Inputs& in, const std::string& policy_path,
                 const std::string& constraints_path) {
  PolicyState p = in.policy(policy_path);
  std::vector<Constraint> qs = in.constraints(constraints_path);
  SemanticsIndex idx = evaluate(p);
  Report r;
  Json verdicts = Json::array();
  std::size_t violated = 0;
  for (const auto& q : qs) {
    ConstraintCheck c = check_constraint(idx, q);
    verdicts.push_back(Json{{"id", q.id},
                            {"constraint", serialize_constraint(q)},
                            {"satisfied", c.satisfied},
                            {"violators", to_json(c.violators)}});
    r.human += q.id + ": " +
               (c.satisfied ? std::string("satisfied")
                            : "violated " + to_string(c.violators)) +
               "\n";
    if (!c.satisfied) ++violated;
  }
  r.result["constraints"] = std::move(verdicts);
  r.result["violated"] = violated;
  r.human += std::to_string(qs.size()) + " constraint(s), " +
             std::to_string(violated) + " violated\n";
  r.exit_code = violated == 0 ? kExitOk : kExitViolated;
  return r;
}

Report cmd_deps(Inputs& in, const std::string& policy_path,
                const std::string& constraints_path, bool all_supports,
                std::size_t cap) {
  PolicyState p = in.policy(policy_path);
  std::vector<Constraint> qs = in.constraints(constraints_path);
  SemanticsIndex idx = evaluate(p);
  JustifiedOptions opts{cap};
  Report r;
  Json items = Json::array();
  bool any_violated = false;
  for (const auto& q : qs) {
    ConstraintCheck c = check_constraint(idx, q);
    RoleSet g = gamma_expr(p, idx, q.lhs);
    Json item{{"id", q.id},
              {"constraint", serialize_constraint(q)},
              {"status", c.satisfied ? "holding" : "violated"},
              {"lhs_members", to_json(c.lhs_members)},
              {"violators", to_json(c.violators)},
              {"gamma", to_json(g)}};
    r.human += q.id + ": " +
               (c.satisfied ? std::string("satisfied")
                            : "violated " + to_string(c.violators)) +
               "\n";
    r.human += "  gamma: " + to_string(g) + "\n";
    if (!c.satisfied) {
      any_violated = true;
      item["support"] = nullptr;
    } else {
      RoleSupport sigma = support_for_constraint(p, c.lhs_members, q.rhs, {}, opts);
      item["support"] = to_json(sigma.roles);
      r.human += "  support: " + to_string(sigma.roles) + "\n";
    }
    if (all_supports) {
      Json per = Json::array();
      for (const auto& m : c.lhs_members) {
        auto sups = expr_supports(p, m, q.rhs, {}, opts);
        Json list = Json::array();
        r.human += "  supports of " + m.name + ":" +
                   (sups.empty() ? " (none)" : "") + "\n";
        for (const auto& s : sups) {
          list.push_back(to_json(s));
          r.human += "    " + to_string(s) + "\n";
        }
        per.push_back(Json{{"member", m.name}, {"supports", std::move(list)}});
      }
      item["member_supports"] = std::move(per);
    }
    items.push_back(std::move(item));
  }
  bool truncated = justified_semantics(p, opts).truncated;
  r.result["max_supports"] = cap;
  r.result["truncated"] = truncated;
  r.result["constraints"] = std::move(items);
  if (truncated) r.human += "note: support enumeration truncated\n";
  r.exit_code = any_violated ? kExitViolated : kExitOk;
  return r;
}

Report cmd_analyze(Inputs& in, const std::string& policy_path,
                   const std::string& constraints_path,
                   const std::string& monitor_path) {
  PolicyState p = in.policy(policy_path);
  std::vector<Constraint> qs = in.constraints(constraints_path);
  RoleMonitor m = in.monitor(monitor_path);
  RoleMonitor bound = m.bind(p);
  BoundIndex b = bounds(p, bound);
  RoleSet core_roles = core(p, bound.growth_trusted.roles, b);
  Report r;
  r.result["monitor"] = monitor_json(m);
  r.result["core"] = to_json(core_roles);
  r.human += "core: " + to_string(core_roles) + "\n";
  Json items = Json::array();
  bool any_violated = false;
  bool any_unestablished = false;
  for (const auto& q : qs) {
    BoundedCheck bc = check_bounded_containment(b, q);
    RoleSet gg = gamma_restricted_expr(p, core_roles, b, q.lhs);
    MonitorRecord rec = register_constraint(p, q, MonitorMode::restricted(m));
    Json item{{"id", q.id},
              {"constraint", serialize_constraint(q)},
              {"status", to_string(rec.status)},
              {"bound_holds", bc.holds},
              {"upper_lhs", to_json(bc.upper_lhs)},
              {"lower_rhs", to_json(bc.lower_rhs)},
              {"witnesses", to_json(bc.witnesses)},
              {"gamma_restricted", to_json(gg)}};
    r.human += q.id + ": " + to_string(rec.status) + "\n";
    r.human += "  upper(lhs): " + to_string(bc.upper_lhs) + "\n";
    r.human += "  lower(rhs): " + to_string(bc.lower_rhs) + "\n";
    r.human += "  bound: " +
               (bc.holds ? std::string("holds")
                         : "fails, witnesses " + to_string(bc.witnesses)) +
               "\n";
    r.human += "  gamma_restricted: " + to_string(gg) + "\n";
    switch (rec.status) {
      case RecordStatus::kHolding:
        item["support"] = to_json(rec.support_cache);
        r.human += "  support: " + to_string(rec.support_cache) + "\n";
        break;
      case RecordStatus::kUnestablished:
        any_unestablished = true;
        item["support"] = "unestablished";
        r.human += "  support: unestablished\n";
        break;
      default:
        any_violated = true;
        item["support"] = nullptr;
        break;
    }
    items.push_back(std::move(item));
  }
  r.result["constraints"] = std::move(items);
  r.exit_code = any_violated        ? kExitViolated
                : any_unestablished ? kExitUnestablished
                                    : kExitOk;
  return r;
}

struct MonitorFlags {
  std::string monitor_path;
  bool credential = false;
  bool quiet_holds = false;
};

Report cmd_monitor(Inputs& in, const std::string& policy_path,
                   const std::string& constraints_path,
                   const std::string& log_path, const MonitorFlags& flags,
                   PolicyState& final_state) {
  PolicyState p = in.policy(policy_path);
  std::vector<Constraint> qs = in.constraints(constraints_path);
  std::vector<ChangeEvent> log = in.changelog(log_path);
  MonitorMode mode = MonitorMode::full_trust();
  if (!flags.monitor_path.empty()) {
    if (flags.credential) {
      throw InputError{"--credential-support cannot be combined with --monitor",
                       Json{{"kind", "usage"}}};
    }
    mode = MonitorMode::restricted(in.monitor(flags.monitor_path));
  } else if (flags.credential) {
    mode = MonitorMode::credential();
  }
  std::vector<std::pair<Constraint, MonitorMode>> regs;
  for (const auto& q : qs) regs.emplace_back(q, mode);

  SessionResult s = run_session(p, regs, log);
  final_state = s.final_state;

  Report r;
  bool initial_violated = false;
  bool initial_unestablished = false;
  Json initial = Json::array();
  for (const auto& [q, md] : regs) {
    MonitorRecord rec = register_constraint(p, q, md);
    initial.push_back(to_json(rec));
    r.human += "register " + record_line(rec) + "\n";
    initial_violated |= rec.status == RecordStatus::kViolated ||
                        rec.status == RecordStatus::kBoundViolated;
    initial_unestablished |= rec.status == RecordStatus::kUnestablished;
  }
  Json warnings = Json::array();
  bool violated = initial_violated;
  std::size_t shown = 0;
  for (const auto& w : s.warnings) {
    if (w.outcome != Warning::Outcome::kStillHolds) violated = true;
    if (flags.quiet_holds && w.outcome == Warning::Outcome::kStillHolds) {
      continue;
    }
    ++shown;
    warnings.push_back(to_json(w));
    r.human += warning_line(w) + "\n";
  }
  Json final_records = Json::array();
  for (const auto& rec : s.records) {
    final_records.push_back(to_json(rec));
    r.human += "final " + record_line(rec) + "\n";
  }
  r.human += std::to_string(log.size()) + " event(s), " +
             std::to_string(s.no_op_events) + " no-op, " +
             std::to_string(s.warnings.size()) + " warning(s)\n";
  r.result["mode"] = to_string(mode.kind);
  if (mode.kind == MonitorMode::Kind::kRestrictedTrust) {
    r.result["monitor"] = monitor_json(mode.monitor);
  }
  r.result["initial"] = std::move(initial);
  r.result["events"] = log.size();
  r.result["no_op_events"] = s.no_op_events;
  r.result["warning_count"] = s.warnings.size();
  r.result["warnings_shown"] = shown;
  r.result["warnings"] = std::move(warnings);
  r.result["final"] = std::move(final_records);
  r.exit_code = violated                ? kExitViolated
                : initial_unestablished ? kExitUnestablished
                                        : kExitOk;
  return r;
}

std::string render(const std::string& format, const std::string& command,
                   const std::vector<std::string>& args, const Inputs& in,
                   const Report& r) {
  if (format == "human") return r.human;
  Json doc;
  doc["version"] = kReportVersion;
  doc["command"] = command;
  doc["arguments"] = args;
  doc["inputs_digest"] = in.digest();
  doc["result"] = r.result;
  doc["exit_code"] = r.exit_code;
  return doc.dump(2) + "\n";
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) return false;
  f << text;
  return static_cast<bool>(f);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Evaluate RT0 policies and monitor containment constraints",
               "rtmon"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "human";
  std::string out_path;
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"human", "machine"}));
  app.add_option("--out", out_path,
                 "Write the report (monitor: the final state) to FILE");

  std::string policy, constraints, expr, monitor_path, log_path;
  auto* query = app.add_subcommand("query", "List the members of a role or expression");
  query->add_option("POLICY", policy)->required();
  query->add_option("EXPR", expr)->required();

  auto* check = app.add_subcommand("check", "Check constraints against a policy");
  check->add_option("POLICY", policy)->required();
  check->add_option("CONSTRAINTS", constraints)->required();

  bool all_supports = false;
  std::size_t max_supports = 8;
  auto* deps = app.add_subcommand("deps", "Show growth sets and supports");
  deps->add_option("POLICY", policy)->required();
  deps->add_option("CONSTRAINTS", constraints)->required();
  deps->add_flag("--all-supports", all_supports, "List every minimal support per member");
  deps->add_option("--max-supports", max_supports,
                   "Supports kept per role and member, 0 for no limit");

  auto* analyze = app.add_subcommand("analyze", "Bounded analysis under a role monitor");
  analyze->add_option("POLICY", policy)->required();
  analyze->add_option("CONSTRAINTS", constraints)->required();
  analyze->add_option("MONITOR", monitor_path)->required();

  MonitorFlags flags;
  auto* monitor = app.add_subcommand("monitor", "Replay a change log against constraints");
  monitor->add_option("POLICY", policy)->required();
  monitor->add_option("CONSTRAINTS", constraints)->required();
  monitor->add_option("CHANGELOG", log_path)->required();
  monitor->add_option("--monitor", flags.monitor_path, "Role monitor file (restricted trust)");
  monitor->add_flag("--credential-support", flags.credential,
                    "Track credential supports instead of role supports");
  monitor->add_flag("--quiet-holds", flags.quiet_holds,
                    "Do not print warnings whose re-check still holds");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  std::string command = app.get_subcommands().front()->get_name();
  Inputs in;
  Report r;
  PolicyState final_state;
  try {
    if (command == "query") {
      r = cmd_query(in, policy, expr);
    } else if (command == "check") {
      r = cmd_check(in, policy, constraints);
    } else if (command == "deps") {
      r = cmd_deps(in, policy, constraints, all_supports, max_supports);
    } else if (command == "analyze") {
      r = cmd_analyze(in, policy, constraints, monitor_path);
    } else {
      r = cmd_monitor(in, policy, constraints, log_path, flags, final_state);
    }
  } catch (const InputError& e) {
    err << "rtmon: error: " << e.message << "\n";
    if (format == "machine") {
      Json doc;
      doc["version"] = kReportVersion;
      doc["command"] = command;
      doc["arguments"] = args;
      doc["error"] = e.detail;
      if (!doc["error"].contains("message")) doc["error"]["message"] = e.message;
      doc["exit_code"] = kExitInputError;
      out << doc.dump(2) << "\n";
    }
    return kExitInputError;
  }

  std::string text = render(format, command, args, in, r);
  if (!out_path.empty() && command == "monitor") {
    if (!write_file(out_path, serialize_policy(final_state))) {
      err << "rtmon: error: cannot write '" << out_path << "'\n";
      return kExitInputError;
    }
    out << text;
  } else if (!out_path.empty()) {
    if (!write_file(out_path, text)) {
      err << "rtmon: error: cannot write '" << out_path << "'\n";
      return kExitInputError;
    }
  } else {
    out << text;
  }
  return r.exit_code;
}

}  // namespace rtmon::cli
