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

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oqr/error.hpp"
#include "oqr/names.hpp"

namespace oqr {
namespace {

TEST(CanonicalName, UpperCasesAndMapsHyphens) {
  EXPECT_EQ(canonical_name("orthopaedic_sequelea"), "ORTHOPAEDIC_SEQUELEA");
  EXPECT_EQ(canonical_name("Orthopaedic-Sequelea"), "ORTHOPAEDIC_SEQUELEA");
  EXPECT_EQ(canonical_name("  Brain Tumor  Disease-X "), "BRAIN_TUMOR_DISEASE_X");
  EXPECT_EQ(canonical_name("-5"), "-5");
  EXPECT_EQ(canonical_name(""), "");
}

TEST(CanonicalName, Idempotent) {
  std::mt19937_64 rng(11);
  const std::string alphabet = "abcXYZ_- 019";
  for (int i = 0; i < 500; ++i) {
    std::string s;
    const int n = static_cast<int>(rng() % 12);
    for (int j = 0; j < n; ++j) s.push_back(alphabet[rng() % alphabet.size()]);
    const std::string once = canonical_name(s);
    EXPECT_EQ(canonical_name(once), once) << '"' << s << '"';
  }
}

TEST(Identifier, Rules) {
  EXPECT_TRUE(is_identifier("hasClinicalTestName"));
  EXPECT_TRUE(is_identifier("Disease-X"));
  EXPECT_TRUE(is_identifier("_x1"));
  EXPECT_FALSE(is_identifier("1abc"));
  EXPECT_FALSE(is_identifier(""));
  EXPECT_FALSE(is_identifier("a.b"));
}

TEST(Literal, NumbersAndBooleans) {
  EXPECT_TRUE(is_number("42"));
  EXPECT_TRUE(is_number("-3.5"));
  EXPECT_FALSE(is_number("3."));
  EXPECT_FALSE(is_number("."));
  EXPECT_TRUE(is_literal_token("TRUE"));
  EXPECT_TRUE(is_literal_token("FALSE"));
  EXPECT_FALSE(is_literal_token("true"));
  EXPECT_FALSE(is_literal_token("ABSENT"));
}

// Plain recursive definition, memoized.
std::size_t reference_distance(const std::string& a, const std::string& b) {
  std::vector<std::vector<int>> memo(a.size() + 1, std::vector<int>(b.size() + 1, -1));
  std::function<int(std::size_t, std::size_t)> d = [&](std::size_t i, std::size_t j) -> int {
    if (i == 0) return static_cast<int>(j);
    if (j == 0) return static_cast<int>(i);
    int& m = memo[i][j];
    if (m >= 0) return m;
    m = std::min({d(i - 1, j) + 1, d(i, j - 1) + 1, d(i - 1, j - 1) + (a[i - 1] != b[j - 1])});
    return m;
  };
  return static_cast<std::size_t>(d(a.size(), b.size()));
}

TEST(EditDistance, MatchesReference) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 400; ++i) {
    std::string a, b;
    for (std::size_t j = rng() % 8; j > 0; --j) a.push_back("abc"[rng() % 3]);
    for (std::size_t j = rng() % 8; j > 0; --j) b.push_back("abc"[rng() % 3]);
    EXPECT_EQ(edit_distance(a, b), reference_distance(a, b)) << a << " / " << b;
  }
  EXPECT_EQ(edit_distance("HEADACHES", "HEADACHE"), 1u);
}

TEST(ErrorCodes, WireNames) {
  EXPECT_EQ(to_string(ErrorCode::kUnknownConcept), "UnknownConcept");
  EXPECT_EQ(to_string(ErrorCode::kMixedOnlyAssertion), "MixedOnlyAssertion");
  EXPECT_EQ(to_string(ErrorCode::kArityError), "ArityError");
  try {
    fail(ErrorCode::kConflict, "taken");
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConflict);
    EXPECT_STREQ(e.what(), "taken");
  }
}

}  // namespace
}  // namespace oqr
