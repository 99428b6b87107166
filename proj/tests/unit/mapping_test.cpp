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

#include <string>

#include "oqr/dl_expr.hpp"
#include "oqr/error.hpp"
#include "oqr/mapping.hpp"
#include "test_support.hpp"

namespace oqr {
namespace {

using testing::hec;

ErrorCode omf_error(const std::string& omf) {
  try {
    MappingRegistry::load(omf, hec().ont);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted:\n" << omf;
  return ErrorCode::kSyntaxError;
}

TEST(Mapping, SampleRegistry) {
  const auto& reg = hec().reg;
  const auto& rel = reg.relation({"hec", "patient_information"});
  EXPECT_EQ(rel.primary_key, std::vector<std::string>{"patient_id"});
  EXPECT_EQ(reg.relation({"hec", "clinical_test_values"}).primary_key,
            (std::vector<std::string>{"id", "ct_id"}));
  EXPECT_EQ(reg.foreign_keys().size(), 1u);
}

TEST(Mapping, SubPropertiesResolveThroughTheirParent) {
  const auto& h = hec();
  for (const char* p : {"hasOrthopaedicSequeleaValue", "hasHeadachesValue",
                        "hasClinicalTestBooleanValue", "hasClinicalTestValue"}) {
    const auto& b = h.reg.resolve_property(h.ont, p);
    EXPECT_EQ(b.column, "clinical_test_value") << p;
    EXPECT_EQ(b.relation, testing::kPatients);
  }
  EXPECT_EQ(h.reg.resolve_property(h.ont, "hasClinicalTestName").column, "clinical_test_name");
}

TEST(Mapping, UnmappedLineage) {
  const auto& h = hec();
  try {
    h.reg.resolve_property(h.ont, "isOrthopaedicSequeleaValueOf");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnmappedProperty);
  }
}

TEST(Mapping, NearestAncestorWins) {
  const auto& h = hec();
  const std::string omf =
      "relation hec.p columns id a b pk id\n"
      "map hasClinicalTestValue -> hec.p.a\n"
      "map hasOrthopaedicSequeleaValue -> hec.p.b\n";
  const auto reg = MappingRegistry::load(omf, h.ont);
  EXPECT_EQ(reg.resolve_property(h.ont, "hasOrthopaedicSequeleaValue").column, "b");
  EXPECT_EQ(reg.resolve_property(h.ont, "hasHeadachesValue").column, "a");
}

TEST(Mapping, CrossRelationExpressions) {
  const auto& h = hec();
  const std::string omf =
      "relation hec.p columns id a pk id\nrelation hec.q columns id b pk id\n"
      "map hasClinicalTestName -> hec.p.a\nmap hasClinicalTestValue -> hec.q.b\n";
  const auto reg = MappingRegistry::load(omf, h.ont);
  const Expr e = parse_expression(
      "hasClinicalTestName some HEADACHES intersection hasClinicalTestValue has TRUE", h.ont);
  try {
    reg.relation_of(h.ont, e);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::kCrossRelationExpression);
    EXPECT_NE(std::string(err.what()).find("hec.q"), std::string::npos);
  }
}

TEST(Mapping, LoadErrors) {
  EXPECT_EQ(omf_error("relation hec.p columns a pk b\n"), ErrorCode::kUnknownReference);
  EXPECT_EQ(omf_error("relation hec.p columns a a pk a\n"), ErrorCode::kConflictingDeclaration);
  EXPECT_EQ(omf_error("relation hec.p columns a pk a\nmap nosuch -> hec.p.a\n"),
            ErrorCode::kUnknownReference);
  EXPECT_EQ(omf_error("relation hec.p columns a pk a\nmap hasClinicalTestName -> hec.p.z\n"),
            ErrorCode::kUnknownReference);
  EXPECT_EQ(omf_error("relation hec.p columns a b pk a\nmap hasClinicalTestName -> hec.p.a\n"
                      "map hasClinicalTestName -> hec.p.b\n"),
            ErrorCode::kDuplicateBinding);
  EXPECT_EQ(omf_error("relation hec.p columns a pk a\nfk hec.p.a references hec.x.a\n"),
            ErrorCode::kUnknownReference);
  EXPECT_EQ(omf_error("relation p columns a pk a\n"), ErrorCode::kSyntaxError);
  EXPECT_EQ(omf_error("relation hec.p columns a pk\n"), ErrorCode::kSyntaxError);
}

TEST(Mapping, ToOmfRoundTrips) {
  const auto& h = hec();
  const std::string text = h.reg.to_omf();
  EXPECT_EQ(MappingRegistry::load(text, h.ont).to_omf(), text);
}

}  // namespace
}  // namespace oqr
