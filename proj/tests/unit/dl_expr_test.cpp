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

#include <gtest/gtest.h>

#include <cctype>
#include <functional>
#include <iterator>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oqr/dl_expr.hpp"
#include "oqr/error.hpp"
#include "oqr/names.hpp"
#include "test_support.hpp"

namespace oqr {
namespace {

using testing::hec;

ErrorCode parse_error(const std::string& text) {
  try {
    parse_expression(text, hec().ont);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted: " << text;
  return ErrorCode::kSyntaxError;
}

TEST(Parse, Query1IsUnionOfThreeSome) {
  const Expr e = parse_expression(
      "hasClinicalTestName some DOUBLE_VISION union hasClinicalTestName some HEADACHES union "
      "hasClinicalTestName some ORTHOPAEDIC_SEQUELEA",
      hec().ont);
  ASSERT_EQ(e.kind, ExprKind::kUnion);
  ASSERT_EQ(e.children.size(), 3u);
  for (const auto& c : e.children) {
    EXPECT_EQ(c.kind, ExprKind::kSome);
    EXPECT_EQ(c.property, "HASCLINICALTESTNAME");
    EXPECT_EQ(c.operand.form, OperandForm::kClass);
  }
  EXPECT_EQ(e.children[2].operand.names, std::vector<std::string>{"ORTHOPAEDIC_SEQUELEA"});
}

TEST(Parse, NegatedHas) {
  const Expr e = parse_expression("hasClinicalTestBooleanValue has NOT TRUE", hec().ont);
  EXPECT_EQ(e, Expr::has("HASCLINICALTESTBOOLEANVALUE", single_operand("TRUE"), true));
}

TEST(Parse, PrecedenceAndParentheses) {
  const auto& ont = hec().ont;
  const Expr a = Expr::has("HASCLINICALTESTNAME", single_operand("HEADACHES"));
  const Expr b = Expr::has("HASCLINICALTESTVALUE", single_operand("TRUE"));
  const Expr c = Expr::has("HASCLINICALTESTNAME", single_operand("DOUBLE_VISION"));
  const std::string as = "hasClinicalTestName has headaches";
  const std::string bs = "hasClinicalTestValue has true";
  const std::string cs = "hasClinicalTestName has double_vision";
  EXPECT_EQ(parse_expression(as + " intersection " + bs + " union " + cs, ont),
            Expr::junction(ExprKind::kUnion,
                           {Expr::junction(ExprKind::kIntersection, {a, b}), c}));
  EXPECT_EQ(parse_expression(as + " intersection (" + bs + " union " + cs + ")", ont),
            Expr::junction(ExprKind::kIntersection,
                           {a, Expr::junction(ExprKind::kUnion, {b, c})}));
  // Nested same-kind groups flatten.
  EXPECT_EQ(parse_expression("(" + as + " union " + bs + ") union " + cs, ont),
            Expr::junction(ExprKind::kUnion, {a, b, c}));
}

TEST(Parse, SetsAreSortedAndDeduplicated) {
  const Expr e = parse_expression("hasClinicalTestName some {headaches double_vision headaches}",
                                  hec().ont);
  EXPECT_EQ(e.operand.form, OperandForm::kSet);
  EXPECT_EQ(e.operand.names, (std::vector<std::string>{"DOUBLE_VISION", "HEADACHES"}));
}

TEST(Parse, Errors) {
  EXPECT_EQ(parse_error("(a some B)"), ErrorCode::kUnknownReference);
  EXPECT_EQ(parse_error("hasClinicalTestName some"), ErrorCode::kSyntaxError);
  EXPECT_EQ(parse_error("hasClinicalTestName some Bogus"), ErrorCode::kUnknownReference);
  EXPECT_EQ(parse_error("HEADACHES some HEADACHES"), ErrorCode::kKindMismatch);
  EXPECT_EQ(parse_error("hasClinicalTestName some {Orthopaedic_Sequelea_Value}"),
            ErrorCode::kKindMismatch);
  EXPECT_EQ(parse_error("hasClinicalTestName has Clinical_Tests"), ErrorCode::kKindMismatch);
  EXPECT_EQ(parse_error("hasClinicalTestName some true"), ErrorCode::kKindMismatch);
  EXPECT_EQ(parse_error("hasClinicalTestName min 2"), ErrorCode::kUnsupported);
  EXPECT_EQ(parse_error("hasClinicalTestName some HEADACHES union hasClinicalTestName only "
                        "HEADACHES"),
            ErrorCode::kUnsupported);
  EXPECT_EQ(parse_error("complementOf(hasClinicalTestName only HEADACHES)"),
            ErrorCode::kUnsupported);
  EXPECT_EQ(parse_error("hasClinicalTestName some {}"), ErrorCode::kSyntaxError);
}

TEST(Parse, ErrorPositionPointsAtOffendingToken) {
  try {
    parse_expression("hasClinicalTestName some Bogus", hec().ont);
    FAIL();
  } catch (const Error& e) {
    ASSERT_TRUE(e.position.has_value());
    EXPECT_EQ(*e.position, 25u);
  }
}

TEST(Concept, ParsesAssertionsAndName) {
  const auto def = parse_concept(
      "concept Brain_Tumor-X {\n assert hasClinicalTestName some HEADACHES;\n"
      " assert hasClinicalTestValue has TRUE\n}",
      hec().ont);
  EXPECT_EQ(def.name, "BRAIN_TUMOR_X");
  EXPECT_EQ(def.assertions.size(), 2u);
  try {
    parse_concept("concept EMPTY { }", hec().ont);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyConcept);
  }
}

TEST(Concept, MultipleBlocksKeepComments) {
  std::vector<std::vector<std::string>> comments;
  const auto defs = parse_concepts(
      "# first\nconcept A { assert hasClinicalTestName some HEADACHES }\n"
      "concept B { assert hasClinicalTestValue has TRUE; }\n",
      hec().ont, &comments);
  ASSERT_EQ(defs.size(), 2u);
  ASSERT_EQ(comments.size(), 2u);
  EXPECT_EQ(comments[0], std::vector<std::string>{"# first"});
  EXPECT_TRUE(comments[1].empty());
}

TEST(Format, Examples) {
  EXPECT_EQ(format_expression(Expr::has("P", single_operand("I"))), "P has I");
  const auto& ont = hec().ont;
  const std::string q1 =
      "hasClinicalTestName some DOUBLE_VISION union hasClinicalTestName some HEADACHES union "
      "hasClinicalTestName some ORTHOPAEDIC_SEQUELEA";
  const std::string out = format_expression(parse_expression(q1, ont));
  EXPECT_EQ(canonical_name(out), canonical_name(q1));
}

TEST(RoundTrip, RandomAstsAndConcepts) {
  const auto& ont = hec().ont;
  testing::ExprGen gen(ont, 99);
  for (int i = 0; i < 500; ++i) {
    ConceptDefinition def{"C" + std::to_string(i), {}};
    const int n = 1 + i % 3;
    for (int j = 0; j < n; ++j) def.assertions.push_back(gen.expr(4));
    const std::string text = format_concept(def);
    EXPECT_EQ(parse_concept(text, ont), def) << text;
    EXPECT_EQ(format_concept(parse_concept(text, ont)), text);
  }
}

TEST(RoundTrip, ParsingNeverNestsSameKind) {
  const auto& ont = hec().ont;
  testing::ExprGen gen(ont, 5);
  std::function<void(const Expr&)> check = [&](const Expr& e) {
    for (const auto& c : e.children) {
      if (e.kind == ExprKind::kUnion || e.kind == ExprKind::kIntersection) {
        EXPECT_NE(c.kind, e.kind);
        EXPECT_GE(e.children.size(), 2u);
      }
      check(c);
    }
  };
  for (int i = 0; i < 300; ++i) check(parse_expression(format_expression(gen.expr(5)), ont));
}

// ---------------------------------------------------------------------------
// Grammar oracle: a token-level recursive-descent recognizer written from the
// grammar, with the kind rules of the sample ontology. Random concept texts
// (grammar derivations with a few token mutations) must be accepted by the
// parser exactly when the recognizer accepts them.

const std::set<std::string> kProps{"hasClinicalTestName", "hasHeadachesValue"};
const std::set<std::string> kClasses{"Clinical_Tests", "Orthopaedic_Sequelea_Value", "HEADACHES"};
const std::set<std::string> kIndividuals{"absent", "life_threatening", "HEADACHES"};
const std::set<std::string> kLiterals{"true", "FALSE", "42", "-7"};
const std::vector<std::string> kVocabulary{
    "concept", "assert", "union", "intersection", "complementOf", "not", "some", "only", "has",
    "{", "}", "(", ")", ";", "hasClinicalTestName", "hasHeadachesValue", "Clinical_Tests",
    "Orthopaedic_Sequelea_Value", "HEADACHES", "absent", "life_threatening", "true", "FALSE",
    "42", "-7", "Bogus"};

struct Reject {};

class Recognizer {
 public:
  explicit Recognizer(std::vector<std::string> t) : t_(std::move(t)) {}

  bool accepts() {
    try {
      concept_block();
      return i_ == t_.size();
    } catch (const Reject&) {
      return false;
    }
  }

 private:
  struct Shape {
    bool only_root = false;
  };

  const std::string& peek() const {
    static const std::string end;
    return i_ < t_.size() ? t_[i_] : end;
  }
  static std::string low(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  }
  bool is_kw(const std::string& s) const {
    static const std::set<std::string> kw{"concept", "assert", "union", "intersection",
                                          "complementof", "some", "only", "has", "not",
                                          "true", "false"};
    return kw.count(low(s)) > 0;
  }
  bool is_name(const std::string& s) const {
    return !s.empty() && (std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_') &&
           !is_kw(s);
  }
  void eat(const std::string& s) {
    if (low(peek()) != low(s)) throw Reject{};
    ++i_;
  }

  void concept_block() {
    eat("concept");
    if (!is_name(peek())) throw Reject{};
    ++i_;
    eat("{");
    int n = 0;
    while (peek() != "}") {
      if (peek().empty()) throw Reject{};
      eat("assert");
      onlies_ = 0;
      const Shape s = expr();
      if (onlies_ > 0 && !(s.only_root && onlies_ == 1)) throw Reject{};
      ++n;
      if (peek() == ";") {
        ++i_;
      } else if (peek() != "}") {
        throw Reject{};
      }
    }
    ++i_;
    if (n == 0) throw Reject{};
  }

  Shape expr() {
    Shape s = conj();
    bool many = false;
    while (low(peek()) == "union") {
      ++i_;
      conj();
      many = true;
    }
    return many ? Shape{} : s;
  }

  Shape conj() {
    Shape s = unary();
    bool many = false;
    while (low(peek()) == "intersection") {
      ++i_;
      unary();
      many = true;
    }
    return many ? Shape{} : s;
  }

  Shape unary() {
    if (low(peek()) == "complementof") {
      ++i_;
      eat("(");
      expr();
      eat(")");
      return {};
    }
    if (low(peek()) == "not") {
      ++i_;
      unary();
      return {};
    }
    if (peek() == "(") {
      ++i_;
      const Shape s = expr();
      eat(")");
      return s;
    }
    return atom();
  }

  Shape atom() {
    if (!kProps.count(peek())) throw Reject{};
    ++i_;
    const std::string kw = low(peek());
    ++i_;
    if (kw == "some" || kw == "only") {
      if (kw == "only") ++onlies_;
      if (peek() == "{") {
        ++i_;
        if (peek() == "}") throw Reject{};
        while (peek() != "}") {
          if (!kIndividuals.count(peek())) throw Reject{};
          ++i_;
        }
        ++i_;
      } else {
        if (!kClasses.count(peek())) throw Reject{};
        ++i_;
      }
      return {kw == "only"};
    }
    if (kw != "has") throw Reject{};
    if (low(peek()) == "not") ++i_;
    auto value = [&] {
      if (!kIndividuals.count(peek()) && !kLiterals.count(peek())) throw Reject{};
      ++i_;
    };
    if (peek() == "{") {
      ++i_;
      if (peek() == "}") throw Reject{};
      while (peek() != "}") value();
      ++i_;
    } else {
      value();
    }
    return {};
  }

  std::vector<std::string> t_;
  std::size_t i_ = 0;
  int onlies_ = 0;
};

class Deriver {
 public:
  explicit Deriver(std::uint64_t seed) : rng_(seed) {}

  std::vector<std::string> concept_tokens() {
    std::vector<std::string> out{"concept", "X", "{"};
    const int n = 1 + static_cast<int>(rng_() % 3);
    for (int i = 0; i < n; ++i) {
      out.push_back("assert");
      if (rng_() % 5 == 0) {
        atom(out, true);
      } else {
        expr(out, 3);
      }
      if (i + 1 < n || rng_() % 2) out.push_back(";");
    }
    out.push_back("}");
    return out;
  }

  std::vector<std::string> mutate(std::vector<std::string> t) {
    const int edits = static_cast<int>(rng_() % 3);
    for (int e = 0; e < edits && !t.empty(); ++e) {
      const std::size_t at = rng_() % t.size();
      switch (rng_() % 3) {
        case 0:
          t[at] = pick(kVocabulary);
          break;
        case 1:
          t.erase(t.begin() + static_cast<std::ptrdiff_t>(at));
          break;
        default:
          t.insert(t.begin() + static_cast<std::ptrdiff_t>(at), pick(kVocabulary));
      }
    }
    return t;
  }

 private:
  template <typename C>
  std::string pick(const C& c) {
    auto it = c.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(rng_() % c.size()));
    return *it;
  }

  void atom(std::vector<std::string>& out, bool allow_only) {
    out.push_back(pick(kProps));
    const auto r = rng_() % (allow_only ? 4 : 3);
    if (r == 0 || r == 3) {
      out.push_back(r == 3 ? "only" : "some");
      if (rng_() % 2) {
        out.push_back(pick(kClasses));
      } else {
        out.push_back("{");
        for (auto k = 1 + rng_() % 2; k > 0; --k) out.push_back(pick(kIndividuals));
        out.push_back("}");
      }
      return;
    }
    out.push_back("has");
    if (r == 2) out.push_back("not");
    std::vector<std::string> values(kIndividuals.begin(), kIndividuals.end());
    values.insert(values.end(), kLiterals.begin(), kLiterals.end());
    out.push_back(pick(values));
  }

  void expr(std::vector<std::string>& out, int depth) {
    if (depth == 0 || rng_() % 3 == 0) {
      atom(out, false);
      return;
    }
    switch (rng_() % 4) {
      case 0:
        out.push_back("complementOf");
        out.push_back("(");
        expr(out, depth - 1);
        out.push_back(")");
        return;
      case 1:
        out.push_back("(");
        expr(out, depth - 1);
        out.push_back(")");
        return;
      default:
        expr(out, depth - 1);
        out.push_back(rng_() % 2 ? "union" : "intersection");
        expr(out, depth - 1);
    }
  }

  std::mt19937_64 rng_;
};

TEST(GrammarOracle, ParserAcceptsExactlyTheRecognizedLanguage) {
  Deriver d(2026);
  int accepted = 0;
  int rejected = 0;
  for (int i = 0; i < 3000; ++i) {
    const auto tokens = d.mutate(d.concept_tokens());
    std::string text;
    for (const auto& t : tokens) text += t + " ";
    const bool expected = Recognizer(tokens).accepts();
    bool got = true;
    try {
      parse_concept(text, hec().ont);
    } catch (const Error&) {
      got = false;
    }
    ASSERT_EQ(got, expected) << text;
    (got ? accepted : rejected) += 1;
  }
  EXPECT_GT(accepted, 500);
  EXPECT_GT(rejected, 500);
}

}  // namespace
}  // namespace oqr
