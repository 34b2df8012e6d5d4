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

#include "rtmon/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace rtmon {

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kSyntax:
      return "syntax";
    case ParseErrorKind::kDuplicateStatement:
      return "duplicate-statement";
    case ParseErrorKind::kLinkedRoleOwnerMismatch:
      return "linked-role-owner-mismatch";
    case ParseErrorKind::kReservedPrincipal:
      return "reserved-principal";
  }
  return "syntax";
}

ParseError::ParseError(ParseErrorKind kind, SourceSpan span,
                       const std::string& message)
    : std::runtime_error(std::to_string(span.line) + ":" +
                         std::to_string(span.column) + ": " + message),
      kind_(kind),
      span_(span),
      detail_(message) {}

namespace {

struct Token {
  enum class Kind {
    kIdent,
    kDot,
    kArrow,
    kAmp,
    kBar,
    kLBrace,
    kRBrace,
    kComma,
    kLParen,
    kRParen,
    kColon,
    kLe,
    kPlus,
    kMinus,
    kStar,
    kEnd,
  };
  Kind kind;
  std::string text;
  int column;  // 1-based
  int length;
};

const char* describe(Token::Kind k) {
  switch (k) {
    case Token::Kind::kIdent: return "identifier";
    case Token::Kind::kDot: return "'.'";
    case Token::Kind::kArrow: return "'<-'";
    case Token::Kind::kAmp: return "'&'";
    case Token::Kind::kBar: return "'|'";
    case Token::Kind::kLBrace: return "'{'";
    case Token::Kind::kRBrace: return "'}'";
    case Token::Kind::kComma: return "','";
    case Token::Kind::kLParen: return "'('";
    case Token::Kind::kRParen: return "')'";
    case Token::Kind::kColon: return "':'";
    case Token::Kind::kLe: return "'<='";
    case Token::Kind::kPlus: return "'+'";
    case Token::Kind::kMinus: return "'-'";
    case Token::Kind::kStar: return "'*'";
    case Token::Kind::kEnd: return "end of line";
  }
  return "token";
}

bool ident_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool ident_char(char c) {
  return ident_start(c) || (c >= '0' && c <= '9') || c == '\'';
}

[[noreturn]] void fail(int line, int column, int length,
                       const std::string& message,
                       ParseErrorKind kind = ParseErrorKind::kSyntax) {
  throw ParseError(kind, SourceSpan{line, column, std::max(length, 1)},
                   message);
}

// `col0` is the 1-based column of line[0] in the original document.
std::vector<Token> tokenize(std::string_view line, int line_no, int col0 = 1) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Token::Kind k, std::size_t len) {
    out.push_back({k, std::string(line.substr(i, len)),
                   static_cast<int>(i) + col0, static_cast<int>(len)});
    i += len;
  };
  while (i < line.size()) {
    char c = line[i];
    if (c == ' ' || c == '\t') {
      ++i;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < line.size() && ident_char(line[j])) ++j;
      push(Token::Kind::kIdent, j - i);
      continue;
    }
    char n = i + 1 < line.size() ? line[i + 1] : '\0';
    switch (c) {
      case '.': push(Token::Kind::kDot, 1); continue;
      case '&': push(Token::Kind::kAmp, 1); continue;
      case '|': push(Token::Kind::kBar, 1); continue;
      case '{': push(Token::Kind::kLBrace, 1); continue;
      case '}': push(Token::Kind::kRBrace, 1); continue;
      case ',': push(Token::Kind::kComma, 1); continue;
      case '(': push(Token::Kind::kLParen, 1); continue;
      case ')': push(Token::Kind::kRParen, 1); continue;
      case ':': push(Token::Kind::kColon, 1); continue;
      case '+': push(Token::Kind::kPlus, 1); continue;
      case '-': push(Token::Kind::kMinus, 1); continue;
      case '*': push(Token::Kind::kStar, 1); continue;
      case '<':
        if (n == '-') { push(Token::Kind::kArrow, 2); continue; }
        if (n == '=') { push(Token::Kind::kLe, 2); continue; }
        break;
      default:
        break;
    }
    std::string shown = std::isprint(static_cast<unsigned char>(c))
                            ? std::string(1, c)
                            : "byte " + std::to_string(static_cast<unsigned char>(c));
    fail(line_no, static_cast<int>(i) + col0, 1,
         "unexpected character '" + shown + "'");
  }
  out.push_back({Token::Kind::kEnd, "", static_cast<int>(line.size()) + col0, 1});
  return out;
}

class LineParser {
 public:
  LineParser(std::vector<Token> toks, int line_no)
      : toks_(std::move(toks)), line_(line_no) {}

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at(Token::Kind k) const { return peek().kind == k; }

  const Token& expect(Token::Kind k, const char* what = nullptr) {
    const Token& t = peek();
    if (t.kind != k) {
      fail_at(t, std::string("expected ") + (what ? what : describe(k)) +
                     ", found " + found(t));
    }
    ++pos_;
    return t;
  }

  bool accept(Token::Kind k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }

  void expect_end() {
    if (!at(Token::Kind::kEnd)) {
      fail_at(peek(), "unexpected " + found(peek()));
    }
  }

  [[noreturn]] void fail_at(const Token& t, const std::string& message,
                            ParseErrorKind kind = ParseErrorKind::kSyntax) const {
    fail(line_, t.column, t.length, message, kind);
  }

  Principal principal() {
    const Token& t = expect(Token::Kind::kIdent, "principal");
    return checked_principal(t);
  }

  Principal checked_principal(const Token& t) const {
    if (t.text == kTopName) {
      fail_at(t, "TOP is reserved and cannot appear in input",
              ParseErrorKind::kReservedPrincipal);
    }
    return Principal(t.text);
  }

  Role role() {
    Principal owner = principal();
    expect(Token::Kind::kDot);
    const Token& n = expect(Token::Kind::kIdent, "role name");
    return Role(std::move(owner), RoleName(n.text));
  }

  Statement statement() {
    std::size_t head_pos = pos_;
    Role head = role();
    expect(Token::Kind::kArrow);
    const Token& first = expect(Token::Kind::kIdent, "statement body");
    if (!at(Token::Kind::kDot)) {
      Principal member = checked_principal(first);
      expect_end();
      return build([&] { return Statement::member(head, member); }, head_pos);
    }
    Principal owner = checked_principal(first);
    expect(Token::Kind::kDot);
    const Token& r1 = expect(Token::Kind::kIdent, "role name");
    Role source(owner, RoleName(r1.text));
    if (accept(Token::Kind::kDot)) {
      const Token& r2 = expect(Token::Kind::kIdent, "role name");
      expect_end();
      if (owner != head.owner) {
        fail(line_, first.column, r2.column + r2.length - first.column,
             "linked role must start with the head owner '" + head.owner.name +
                 "', found '" + owner.name + "'",
             ParseErrorKind::kLinkedRoleOwnerMismatch);
      }
      return build(
          [&] {
            return Statement::linking(head, RoleName(r1.text), RoleName(r2.text));
          },
          head_pos);
    }
    if (at(Token::Kind::kAmp)) {
      std::vector<Role> parts{source};
      while (accept(Token::Kind::kAmp)) parts.push_back(role());
      expect_end();
      return build([&] { return Statement::intersection(head, parts); },
                   head_pos);
    }
    expect_end();
    return build([&] { return Statement::inclusion(head, source); }, head_pos);
  }

  RoleExpr expr() {
    RoleExpr left = conj();
    while (accept(Token::Kind::kBar)) {
      left = RoleExpr::union_of(std::move(left), conj());
    }
    return left;
  }

  std::size_t position() const { return pos_; }
  const Token& token_at(std::size_t i) const { return toks_[i]; }

 private:
  RoleExpr conj() {
    RoleExpr left = atom();
    while (accept(Token::Kind::kAmp)) {
      left = RoleExpr::intersection_of(std::move(left), atom());
    }
    return left;
  }

  RoleExpr atom() {
    if (accept(Token::Kind::kLParen)) {
      RoleExpr inner = expr();
      expect(Token::Kind::kRParen);
      return inner;
    }
    if (accept(Token::Kind::kLBrace)) {
      PrincipalSet members;
      if (!at(Token::Kind::kRBrace)) {
        do {
          members.insert(principal());
        } while (accept(Token::Kind::kComma));
      }
      expect(Token::Kind::kRBrace);
      return RoleExpr::principals(std::move(members));
    }
    if (at(Token::Kind::kIdent)) return RoleExpr::role(role());
    fail_at(peek(), "expected expression, found " + found(peek()));
  }

  template <class F>
  Statement build(F&& make, std::size_t head_pos) {
    try {
      return make();
    } catch (const ModelError& e) {
      const Token& t = toks_[head_pos];
      const Token& last = toks_[toks_.size() - 2];
      fail(line_, t.column, last.column + last.length - t.column, e.what());
    }
  }

  static std::string found(const Token& t) {
    if (t.kind == Token::Kind::kEnd) return "end of line";
    return "'" + t.text + "'";
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int line_;
};

struct Line {
  int number;
  std::string_view text;  // comment and trailing CR removed
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back({number, line});
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

int first_column(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  return static_cast<int>(i) + 1;
}

Statement statement_on(std::string_view text, int line_no, int col0 = 1) {
  LineParser lp(tokenize(text, line_no, col0), line_no);
  return lp.statement();
}

Constraint constraint_on(std::string_view text, int line_no) {
  LineParser lp(tokenize(text, line_no), line_no);
  const Token& kw = lp.expect(Token::Kind::kIdent, "'constraint'");
  if (kw.text != "constraint") lp.fail_at(kw, "expected 'constraint'");
  Constraint q;
  q.id = lp.expect(Token::Kind::kIdent, "constraint id").text;
  const Token& ow = lp.expect(Token::Kind::kIdent, "'owner'");
  if (ow.text != "owner") lp.fail_at(ow, "expected 'owner'");
  q.owner = lp.principal();
  lp.expect(Token::Kind::kColon);
  q.lhs = lp.expr();
  lp.expect(Token::Kind::kLe);
  q.rhs = lp.expr();
  lp.expect_end();
  return q;
}

void serialize_expr_into(const RoleExpr& e, std::string& out);

void operand(const RoleExpr& e, bool parens, std::string& out) {
  if (parens) out += "(";
  serialize_expr_into(e, out);
  if (parens) out += ")";
}

void serialize_expr_into(const RoleExpr& e, std::string& out) {
  using K = RoleExpr::Kind;
  switch (e.kind()) {
    case K::kPrincipals: {
      out += "{";
      bool first = true;
      for (const auto& p : e.members()) {
        if (!first) out += ", ";
        first = false;
        out += p.name;
      }
      out += "}";
      return;
    }
    case K::kRole:
      out += e.role_ref().str();
      return;
    case K::kUnion:
      operand(e.left(), false, out);
      out += " | ";
      operand(e.right(), e.right().kind() == K::kUnion, out);
      return;
    case K::kIntersection:
      operand(e.left(), e.left().kind() == K::kUnion, out);
      out += " & ";
      operand(e.right(), e.right().kind() != K::kPrincipals &&
                             e.right().kind() != K::kRole,
              out);
      return;
  }
}

}  // namespace

Statement parse_statement(std::string_view text) {
  return statement_on(text, 1);
}

PolicyState parse_policy(std::string_view text) {
  PolicyState p;
  std::map<Statement, int> seen;
  for (const auto& line : split_lines(text)) {
    if (blank(line.text)) continue;
    Statement s = statement_on(line.text, line.number);
    if (auto it = seen.find(s); it != seen.end()) {
      int col = first_column(line.text);
      fail(line.number, col, static_cast<int>(trim(line.text).size()),
           "duplicate statement '" + s.str() + "' (first on line " +
               std::to_string(it->second) + ")",
           ParseErrorKind::kDuplicateStatement);
    }
    seen.emplace(s, line.number);
    p.insert(s);
  }
  return p;
}

std::string serialize_policy(const PolicyState& p) {
  std::vector<std::string> lines;
  lines.reserve(p.size());
  for (const auto& s : p) lines.push_back(s.str());
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

Constraint parse_constraint(std::string_view line) {
  std::string_view body = line;
  if (auto hash = body.find('#'); hash != std::string_view::npos) {
    body = body.substr(0, hash);
  }
  if (auto nl = body.find('\n'); nl != std::string_view::npos) {
    if (!blank(body.substr(nl))) {
      fail(2, 1, 1, "expected a single constraint line");
    }
    body = body.substr(0, nl);
  }
  return constraint_on(body, 1);
}

std::vector<Constraint> parse_constraints(std::string_view text) {
  std::vector<Constraint> out;
  std::map<std::string, int> ids;
  for (const auto& line : split_lines(text)) {
    if (blank(line.text)) continue;
    Constraint q = constraint_on(line.text, line.number);
    if (auto it = ids.find(q.id); it != ids.end()) {
      auto pos = line.text.find(q.id, line.text.find("constraint") + 10);
      fail(line.number, static_cast<int>(pos) + 1,
           static_cast<int>(q.id.size()),
           "duplicate constraint id '" + q.id + "' (first on line " +
               std::to_string(it->second) + ")");
    }
    ids.emplace(q.id, line.number);
    out.push_back(std::move(q));
  }
  return out;
}

std::string serialize_expr(const RoleExpr& e) {
  std::string out;
  serialize_expr_into(e, out);
  return out;
}

std::string serialize_constraint(const Constraint& q) {
  return "constraint " + q.id + " owner " + q.owner.name + ": " +
         serialize_expr(q.lhs) + " <= " + serialize_expr(q.rhs);
}

std::string serialize_constraints(const std::vector<Constraint>& qs) {
  std::string out;
  for (const auto& q : qs) out += serialize_constraint(q) + "\n";
  return out;
}

RoleExpr parse_expr(std::string_view text) {
  LineParser lp(tokenize(text, 1), 1);
  RoleExpr e = lp.expr();
  lp.expect_end();
  return e;
}

RoleMonitor parse_monitor(std::string_view text) {
  RoleMonitor m;
  bool have_growth = false;
  bool have_shrink = false;
  for (const auto& line : split_lines(text)) {
    if (blank(line.text)) continue;
    std::string_view t = line.text;
    int col = first_column(t);
    t = trim(t);
    TrustSet* target = nullptr;
    bool* seen = nullptr;
    std::string_view key;
    for (std::string_view k : {"growth-trusted", "shrink-trusted"}) {
      if (t.substr(0, k.size()) == k) key = k;
    }
    if (key.empty()) {
      std::size_t len = t.find(':');
      fail(line.number, col,
           static_cast<int>(len == std::string_view::npos ? t.size() : len),
           "expected 'growth-trusted:' or 'shrink-trusted:'");
    }
    if (key == "growth-trusted") {
      target = &m.growth_trusted;
      seen = &have_growth;
    } else {
      target = &m.shrink_trusted;
      seen = &have_shrink;
    }
    if (*seen) {
      fail(line.number, col, static_cast<int>(key.size()),
           "section '" + std::string(key) + "' given twice");
    }
    *seen = true;
    int rest_col = col + static_cast<int>(key.size());
    LineParser lp(tokenize(t.substr(key.size()), line.number, rest_col),
                  line.number);
    lp.expect(Token::Kind::kColon);
    if (lp.accept(Token::Kind::kStar)) {
      target->all = true;
      lp.expect_end();
      continue;
    }
    if (lp.at(Token::Kind::kEnd)) continue;
    do {
      target->roles.insert(lp.role());
    } while (lp.accept(Token::Kind::kComma));
    lp.expect_end();
  }
  return m;
}

std::string serialize_monitor(const RoleMonitor& m) {
  auto side = [](const char* key, const TrustSet& t) {
    std::string out = key;
    out += ":";
    if (t.all) return out + " *\n";
    bool first = true;
    for (const auto& r : t.roles) {
      out += first ? " " : ", ";
      first = false;
      out += r.str();
    }
    return out + "\n";
  };
  return side("growth-trusted", m.growth_trusted) +
         side("shrink-trusted", m.shrink_trusted);
}

std::vector<ChangeEvent> parse_changelog(std::string_view text) {
  std::vector<ChangeEvent> out;
  for (const auto& line : split_lines(text)) {
    if (blank(line.text)) continue;
    int col = first_column(line.text);
    std::string_view t = line.text.substr(static_cast<std::size_t>(col - 1));
    char op = t.front();
    if (op != '+' && op != '-') {
      fail(line.number, col, 1,
           "expected '+' or '-' at start of change, found '" +
               std::string(1, op) + "'");
    }
    Statement s = statement_on(t.substr(1), line.number, col + 1);
    out.push_back(op == '+' ? ChangeEvent::add(std::move(s))
                            : ChangeEvent::remove(std::move(s)));
  }
  return out;
}

std::string serialize_changelog(const std::vector<ChangeEvent>& log) {
  std::string out;
  for (const auto& ev : log) {
    out += ev.kind == ChangeEvent::Kind::kAdd ? "+ " : "- ";
    out += ev.statement.str() + "\n";
  }
  return out;
}

std::vector<std::string> lint_policy(const PolicyState& p) {
  std::vector<std::string> out;
  for (const auto& pr : p.principals()) {
    char c = pr.name.front();
    if (!(c >= 'A' && c <= 'Z')) {
      out.push_back("principal '" + pr.name + "' does not start uppercase");
    }
  }
  for (const auto& n : p.names()) {
    char c = n.name.front();
    if (!(c >= 'a' && c <= 'z')) {
      out.push_back("role name '" + n.name + "' does not start lowercase");
    }
  }
  return out;
}

}  // namespace rtmon
