// Copyright 2026 The OQR Authors
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

#include "oqr/dl_expr.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <utility>

#include "oqr/error.hpp"
#include "oqr/names.hpp"
#include "oqr/ontology.hpp"

namespace oqr {

Operand class_operand(std::string cls) { return {OperandForm::kClass, {std::move(cls)}}; }

Operand set_operand(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return {OperandForm::kSet, std::move(names)};
}

Operand single_operand(std::string token) { return {OperandForm::kSingle, {std::move(token)}}; }

Expr Expr::some(std::string property, Operand operand) {
  Expr e;
  e.kind = ExprKind::kSome;
  e.property = std::move(property);
  e.operand = std::move(operand);
  return e;
}

Expr Expr::only(std::string property, Operand operand) {
  Expr e = some(std::move(property), std::move(operand));
  e.kind = ExprKind::kOnly;
  return e;
}

Expr Expr::has(std::string property, Operand operand, bool negated) {
  Expr e = some(std::move(property), std::move(operand));
  e.kind = ExprKind::kHas;
  e.negated = negated;
  return e;
}

Expr Expr::complement(Expr inner) {
  Expr e;
  e.kind = ExprKind::kComplement;
  e.children.push_back(std::move(inner));
  return e;
}

Expr Expr::junction(ExprKind kind, std::vector<Expr> children) {
  std::vector<Expr> flat;
  for (auto& child : children) {
    if (child.kind == kind) {
      for (auto& grandchild : child.children) flat.push_back(std::move(grandchild));
    } else {
      flat.push_back(std::move(child));
    }
  }
  if (flat.size() == 1) return std::move(flat.front());
  Expr e;
  e.kind = kind;
  e.children = std::move(flat);
  return e;
}

namespace {

enum class Tok { kIdent, kNumber, kLBrace, kRBrace, kLParen, kRParen, kSemi, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

struct Comment {
  std::size_t pos;
  std::string text;
};

[[noreturn]] void syntax_error(std::size_t pos, const std::string& message) {
  Error err(ErrorCode::kSyntaxError, "at " + std::to_string(pos) + ": " + message);
  err.position = pos;
  throw err;
}

[[noreturn]] void fail_pos(ErrorCode code, std::size_t pos, const std::string& message) {
  Error err(code, message);
  err.position = pos;
  throw err;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}
bool digit(char c) { return c >= '0' && c <= '9'; }

std::vector<Token> lex(std::string_view text, std::vector<Comment>* comments) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {
      std::size_t end = text.find('\n', i);
      if (end == std::string_view::npos) end = text.size();
      if (comments) comments->push_back({i, std::string(text.substr(i, end - i))});
      i = end;
      continue;
    }
    const std::size_t start = i;
    switch (c) {
      case '{': out.push_back({Tok::kLBrace, "{", i++}); continue;
      case '}': out.push_back({Tok::kRBrace, "}", i++}); continue;
      case '(': out.push_back({Tok::kLParen, "(", i++}); continue;
      case ')': out.push_back({Tok::kRParen, ")", i++}); continue;
      case ';': out.push_back({Tok::kSemi, ";", i++}); continue;
      default: break;
    }
    if (ident_start(c)) {
      while (i < text.size() && ident_char(text[i])) ++i;
      out.push_back({Tok::kIdent, std::string(text.substr(start, i - start)), start});
      continue;
    }
    if (digit(c) || ((c == '-' || c == '+') && i + 1 < text.size() && digit(text[i + 1]))) {
      ++i;
      while (i < text.size() && digit(text[i])) ++i;
      if (i + 1 < text.size() && text[i] == '.' && digit(text[i + 1])) {
        ++i;
        while (i < text.size() && digit(text[i])) ++i;
      }
      out.push_back({Tok::kNumber, std::string(text.substr(start, i - start)), start});
      continue;
    }
    syntax_error(i, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::kEnd, "", text.size()});
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

const std::set<std::string>& keywords() {
  static const std::set<std::string> kw = {
      "concept", "assert", "union", "intersection", "complementof", "some",
      "only",    "has",    "not",   "true",         "false"};
  return kw;
}

bool is_cardinality_keyword(std::string_view kw) {
  return kw == "min" || kw == "max" || kw == "exactly" || kw == "cardinality" ||
         kw == "mincardinality" || kw == "maxcardinality";
}

class Parser {
 public:
  Parser(std::string_view text, const Ontology& ont, std::vector<Comment>* comments)
      : tokens_(lex(text, comments)), ont_(ont) {}

  Expr parse_assertion() {
    only_positions_.clear();
    Expr e = parse_union();
    check_only_placement(e);
    return e;
  }

  Expr parse_single_expression() {
    Expr e = parse_assertion();
    expect_end();
    return e;
  }

  ConceptDefinition parse_concept_block() {
    expect_keyword("concept");
    ConceptDefinition def;
    const Token& name = peek();
    if (name.kind != Tok::kIdent || is_keyword(name)) syntax_error(name.pos, "expected concept name");
    def.name = canonical_name(name.text);
    ++pos_;
    expect(Tok::kLBrace, "'{'");
    while (!at(Tok::kRBrace)) {
      if (at(Tok::kEnd)) syntax_error(peek().pos, "unterminated concept block");
      expect_keyword("assert");
      def.assertions.push_back(parse_assertion());
      if (at(Tok::kSemi)) {
        ++pos_;
      } else if (!at(Tok::kRBrace)) {
        syntax_error(peek().pos, "expected ';' or '}'");
      }
    }
    const std::size_t close = peek().pos;
    ++pos_;
    if (def.assertions.empty()) {
      fail_pos(ErrorCode::kEmptyConcept, close, "concept " + def.name + " has no assertions");
    }
    return def;
  }

  bool at_end() const { return at(Tok::kEnd); }
  std::size_t current_pos() const { return peek().pos; }
  std::size_t last_consumed_pos() const { return pos_ == 0 ? 0 : tokens_[pos_ - 1].pos; }

  void expect_end() {
    if (!at(Tok::kEnd)) syntax_error(peek().pos, "unexpected '" + peek().text + "'");
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  bool at(Tok kind) const { return peek().kind == kind; }
  static bool is_keyword(const Token& t) {
    return t.kind == Tok::kIdent && keywords().count(lower(t.text));
  }
  bool at_keyword(std::string_view kw, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == Tok::kIdent && lower(t.text) == kw;
  }
  void expect(Tok kind, std::string_view what) {
    if (!at(kind)) syntax_error(peek().pos, "expected " + std::string(what));
    ++pos_;
  }
  void expect_keyword(std::string_view kw) {
    if (!at_keyword(kw)) syntax_error(peek().pos, "expected '" + std::string(kw) + "'");
    ++pos_;
  }

  Expr parse_union() {
    std::vector<Expr> parts;
    parts.push_back(parse_intersection());
    while (at_keyword("union")) {
      ++pos_;
      parts.push_back(parse_intersection());
    }
    return Expr::junction(ExprKind::kUnion, std::move(parts));
  }

  Expr parse_intersection() {
    std::vector<Expr> parts;
    parts.push_back(parse_unary());
    while (at_keyword("intersection")) {
      ++pos_;
      parts.push_back(parse_unary());
    }
    return Expr::junction(ExprKind::kIntersection, std::move(parts));
  }

  Expr parse_unary() {
    if (at_keyword("complementof")) {
      ++pos_;
      expect(Tok::kLParen, "'(' after complementOf");
      Expr inner = parse_union();
      expect(Tok::kRParen, "')'");
      return Expr::complement(std::move(inner));
    }
    if (at_keyword("not")) {
      ++pos_;
      return Expr::complement(parse_unary());
    }
    if (at(Tok::kLParen)) {
      ++pos_;
      Expr inner = parse_union();
      expect(Tok::kRParen, "')'");
      return inner;
    }
    return parse_atom();
  }

  Expr parse_atom() {
    const Token& prop_tok = peek();
    if (prop_tok.kind != Tok::kIdent || is_keyword(prop_tok)) {
      syntax_error(prop_tok.pos, prop_tok.kind == Tok::kEnd
                                     ? std::string("unexpected end of expression")
                                     : "expected property name, got '" + prop_tok.text + "'");
    }
    ++pos_;
    const std::string property = resolve_property(prop_tok);
    const Token& op = peek();
    if (op.kind != Tok::kIdent) syntax_error(op.pos, "expected 'some', 'only' or 'has'");
    const std::string kw = lower(op.text);
    ++pos_;
    if (kw == "some" || kw == "only") {
      if (kw == "only") only_positions_.push_back(op.pos);
      Operand operand = parse_class_operand();
      return kw == "some" ? Expr::some(property, std::move(operand))
                          : Expr::only(property, std::move(operand));
    }
    if (kw == "has") {
      bool negated = false;
      if (at_keyword("not")) {
        negated = true;
        ++pos_;
      }
      return Expr::has(property, parse_value_operand(), negated);
    }
    if (is_cardinality_keyword(kw)) {
      fail_pos(ErrorCode::kUnsupported, op.pos, "cardinality restrictions are not supported");
    }
    syntax_error(op.pos, "expected 'some', 'only' or 'has', got '" + op.text + "'");
  }

  Operand parse_class_operand() {
    if (at(Tok::kLBrace)) {
      ++pos_;
      std::vector<std::string> names;
      while (!at(Tok::kRBrace)) {
        names.push_back(resolve_individual(next_name_token()));
      }
      if (names.empty()) syntax_error(peek().pos, "empty individual set");
      ++pos_;
      return set_operand(std::move(names));
    }
    return class_operand(resolve_class(next_name_token()));
  }

  Operand parse_value_operand() {
    if (at(Tok::kLBrace)) {
      ++pos_;
      std::vector<std::string> names;
      while (!at(Tok::kRBrace)) names.push_back(resolve_value(next_value_token()));
      if (names.empty()) syntax_error(peek().pos, "empty value set");
      ++pos_;
      return set_operand(std::move(names));
    }
    return single_operand(resolve_value(next_value_token()));
  }

  const Token& next_name_token() {
    const Token& t = peek();
    if (t.kind == Tok::kNumber || at_keyword("true") || at_keyword("false")) {
      fail_pos(ErrorCode::kKindMismatch, t.pos,
               "literal " + t.text + " used where a class or individual is expected");
    }
    if (t.kind != Tok::kIdent || is_keyword(t)) syntax_error(t.pos, "expected a name");
    ++pos_;
    return t;
  }

  const Token& next_value_token() {
    const Token& t = peek();
    const bool ok = t.kind == Tok::kNumber ||
                    (t.kind == Tok::kIdent && (!is_keyword(t) || at_keyword("true") ||
                                               at_keyword("false")));
    if (!ok) syntax_error(t.pos, "expected an individual or literal");
    ++pos_;
    return t;
  }

  std::string resolve_property(const Token& t) {
    const std::string name = canonical_name(t.text);
    if (ont_.find_property(name)) return name;
    if (ont_.find_class(name) || ont_.find_individual(name)) {
      fail_pos(ErrorCode::kKindMismatch, t.pos, name + " is not a property");
    }
    fail_pos(ErrorCode::kUnknownReference, t.pos, "unknown property " + name);
  }

  std::string resolve_class(const Token& t) {
    const std::string name = canonical_name(t.text);
    if (ont_.find_class(name)) return name;
    if (ont_.find_individual(name) || ont_.find_property(name)) {
      fail_pos(ErrorCode::kKindMismatch, t.pos, name + " is not a class");
    }
    fail_pos(ErrorCode::kUnknownReference, t.pos, "unknown class " + name);
  }

  std::string resolve_individual(const Token& t) {
    const std::string name = canonical_name(t.text);
    if (ont_.find_individual(name)) return name;
    if (ont_.find_class(name) || ont_.find_property(name)) {
      fail_pos(ErrorCode::kKindMismatch, t.pos, name + " is not an individual");
    }
    fail_pos(ErrorCode::kUnknownReference, t.pos, "unknown individual " + name);
  }

  std::string resolve_value(const Token& t) {
    const std::string name = canonical_name(t.text);
    if (t.kind == Tok::kNumber || is_literal_token(name)) return name;
    return resolve_individual(t);
  }

  void check_only_placement(const Expr& root) {
    if (only_positions_.empty()) return;
    if (root.kind == ExprKind::kOnly && only_positions_.size() == 1) return;
    const std::size_t bad = root.kind == ExprKind::kOnly && only_positions_.size() > 1
                                ? only_positions_[1]
                                : only_positions_[0];
    fail_pos(ErrorCode::kUnsupported, bad,
             "'only' is supported only as the root of an assertion");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Ontology& ont_;
  std::vector<std::size_t> only_positions_;
};

void format_into(const Expr& e, std::string& out);

void format_operand(const Operand& op, std::string& out) {
  if (op.form == OperandForm::kSet) {
    out += '{';
    for (std::size_t i = 0; i < op.names.size(); ++i) {
      if (i) out += ' ';
      out += op.names[i];
    }
    out += '}';
  } else {
    out += op.names.front();
  }
}

void format_child(const Expr& parent, const Expr& child, std::string& out) {
  const bool paren = parent.kind == ExprKind::kIntersection && child.kind == ExprKind::kUnion;
  if (paren) out += '(';
  format_into(child, out);
  if (paren) out += ')';
}

void format_into(const Expr& e, std::string& out) {
  switch (e.kind) {
    case ExprKind::kSome:
    case ExprKind::kOnly:
      out += e.property;
      out += e.kind == ExprKind::kSome ? " some " : " only ";
      format_operand(e.operand, out);
      return;
    case ExprKind::kHas:
      out += e.property;
      out += e.negated ? " has not " : " has ";
      format_operand(e.operand, out);
      return;
    case ExprKind::kComplement:
      out += "complementOf(";
      format_into(e.children.front(), out);
      out += ')';
      return;
    case ExprKind::kUnion:
    case ExprKind::kIntersection: {
      const char* sep = e.kind == ExprKind::kUnion ? " union " : " intersection ";
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += sep;
        format_child(e, e.children[i], out);
      }
      return;
    }
  }
}

void collect_properties(const Expr& e, std::vector<std::string>& out) {
  if (e.is_atom()) {
    if (std::find(out.begin(), out.end(), e.property) == out.end()) out.push_back(e.property);
    return;
  }
  for (const auto& c : e.children) collect_properties(c, out);
}

}  // namespace

Expr parse_expression(std::string_view text, const Ontology& ont) {
  Parser parser(text, ont, nullptr);
  return parser.parse_single_expression();
}

ConceptDefinition parse_concept(std::string_view text, const Ontology& ont) {
  Parser parser(text, ont, nullptr);
  ConceptDefinition def = parser.parse_concept_block();
  parser.expect_end();
  return def;
}

std::vector<ConceptDefinition> parse_concepts(
    std::string_view text, const Ontology& ont,
    std::vector<std::vector<std::string>>* comments_before) {
  std::vector<Comment> comments;
  Parser parser(text, ont, &comments);
  std::vector<ConceptDefinition> out;
  std::size_t next_comment = 0;
  std::size_t previous_end = 0;
  while (!parser.at_end()) {
    const std::size_t start = parser.current_pos();
    if (comments_before) {
      std::vector<std::string> mine;
      while (next_comment < comments.size() && comments[next_comment].pos < start) {
        if (comments[next_comment].pos >= previous_end) mine.push_back(comments[next_comment].text);
        ++next_comment;
      }
      comments_before->push_back(std::move(mine));
    }
    out.push_back(parser.parse_concept_block());
    previous_end = parser.last_consumed_pos();
  }
  return out;
}

std::string format_expression(const Expr& expr) {
  std::string out;
  format_into(expr, out);
  return out;
}

std::string format_concept(const ConceptDefinition& def) {
  std::string out = "concept " + def.name + " {\n";
  for (const auto& a : def.assertions) {
    out += "  assert ";
    out += format_expression(a);
    out += ";\n";
  }
  out += "}\n";
  return out;
}

std::vector<std::string> properties_of(const Expr& expr) {
  std::vector<std::string> out;
  collect_properties(expr, out);
  return out;
}

}  // namespace oqr
