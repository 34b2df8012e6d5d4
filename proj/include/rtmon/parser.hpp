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

#ifndef RTMON_PARSER_HPP
#define RTMON_PARSER_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rtmon/model.hpp"

namespace rtmon {

struct SourceSpan {
  int line = 1;
  int column = 1;
  int length = 1;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class ParseErrorKind {
  kSyntax,
  kDuplicateStatement,
  kLinkedRoleOwnerMismatch,
  kReservedPrincipal,
};

const char* to_string(ParseErrorKind kind);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, SourceSpan span, const std::string& message);

  ParseErrorKind kind() const { return kind_; }
  const SourceSpan& span() const { return span_; }
  /// Message without the "line:column:" prefix.
  const std::string& detail() const { return detail_; }

 private:
  ParseErrorKind kind_;
  SourceSpan span_;
  std::string detail_;
};

/// Policy document: one `Head <- Body` per line, `#` comments.
PolicyState parse_policy(std::string_view text);
std::string serialize_policy(const PolicyState& p);

/// A single statement, e.g. `A.r <- B.r1 & C.r2`.
Statement parse_statement(std::string_view text);

/// `constraint <id> owner <Principal>: <expr> <= <expr>`
Constraint parse_constraint(std::string_view line);
/// One constraint per line; ids must be unique.
std::vector<Constraint> parse_constraints(std::string_view text);
std::string serialize_constraint(const Constraint& q);
std::string serialize_constraints(const std::vector<Constraint>& qs);

/// Expression grammar shared with constraints; `&` binds tighter than `|`.
RoleExpr parse_expr(std::string_view text);
std::string serialize_expr(const RoleExpr& e);

/// `growth-trusted:` and `shrink-trusted:` sections, each a comma separated
/// role list or `*`. A missing section is the empty set.
RoleMonitor parse_monitor(std::string_view text);
std::string serialize_monitor(const RoleMonitor& m);

/// `+ <statement>` / `- <statement>`, one per line, order preserved.
std::vector<ChangeEvent> parse_changelog(std::string_view text);
std::string serialize_changelog(const std::vector<ChangeEvent>& log);

/// Style findings that are not errors: principals should start uppercase,
/// role names lowercase.
std::vector<std::string> lint_policy(const PolicyState& p);

}  // namespace rtmon

#endif  // RTMON_PARSER_HPP
