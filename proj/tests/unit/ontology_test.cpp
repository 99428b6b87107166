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
#include <vector>

#include "oqr/error.hpp"
#include "oqr/ontology.hpp"
#include "test_support.hpp"

namespace oqr {
namespace {

using testing::hec;

ErrorCode load_error(const std::string& odf) {
  try {
    Ontology::load(odf);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted:\n" << odf;
  return ErrorCode::kSyntaxError;
}

TEST(Ontology, SampleStructure) {
  const Ontology& ont = hec().ont;
  EXPECT_EQ(ont.subclasses(std::nullopt),
            (std::vector<std::string>{"CLINICAL_TESTS", "CLINICAL_TEST_VALUES"}));
  EXPECT_TRUE(ont.is_subclass_of("HEADACHES", "CLINICAL_TESTS"));
  EXPECT_TRUE(ont.is_subclass_of("HEADACHES", "HEADACHES"));
  EXPECT_FALSE(ont.is_subclass_of("CLINICAL_TESTS", "HEADACHES"));
  EXPECT_EQ(ont.property_lineage("hasOrthopaedicSequeleaValue"),
            (std::vector<std::string>{"HASORTHOPAEDICSEQUELEAVALUE", "HASCLINICALTESTVALUE"}));
}

TEST(Ontology, ExtensionTokens) {
  const Ontology& ont = hec().ont;
  EXPECT_EQ(ont.extension_tokens("Orthopaedic_Sequelea_Value"),
            (std::vector<std::string>{"ASYMPTOMATIC", "MODERATE_SYMPTOMATIC", "SEVERE_SYMPTOMATIC"}));
  EXPECT_EQ(ont.extension_tokens("HEADACHES"), (std::vector<std::string>{"HEADACHES"}));
  // Transitive: the parent sees every instance below it.
  const auto all = ont.extension_tokens("Clinical_Test_Values");
  EXPECT_EQ(all.size(), 5u);
}

TEST(Ontology, InstancesAndRanges) {
  const Ontology& ont = hec().ont;
  EXPECT_EQ(ont.instances_of("Clinical_Test_Values", false),
            (std::vector<std::string>{"LIFE_THREATENING"}));
  EXPECT_EQ(ont.instances_of("Clinical_Test_Values", true).size(), 5u);
  EXPECT_EQ(ont.range_values("hasHeadachesValue"), (std::vector<std::string>{"FALSE", "TRUE"}));
}

TEST(Ontology, InverseLinksAreMaterialized) {
  const std::string odf =
      "class A\nclass B\nindividual a type A\nindividual b type B\n"
      "property p domain A range B inverse q\nproperty q domain B range A inverse p\n"
      "link a p b\n";
  std::vector<std::string> warnings;
  const Ontology ont = Ontology::load(odf, &warnings);
  EXPECT_EQ(warnings.size(), 1u);
  EXPECT_TRUE(ont.links().count(PropertyLink{"B", "Q", "A", false}));
}

TEST(Ontology, ToOdfRoundTrips) {
  const Ontology& ont = hec().ont;
  const std::string text = ont.to_odf();
  const Ontology again = Ontology::load(text);
  EXPECT_EQ(again.to_odf(), text);
  EXPECT_EQ(again.classes(), ont.classes());
  EXPECT_EQ(again.properties(), ont.properties());
  EXPECT_EQ(again.links(), ont.links());
}

TEST(OntologyErrors, CarryLineNumbers) {
  try {
    Ontology::load("class A\nclass B subclassof C\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownReference);
    ASSERT_TRUE(e.line.has_value());
    EXPECT_EQ(*e.line, 2u);
  }
}

TEST(OntologyErrors, ViolationClasses) {
  EXPECT_EQ(load_error("class A subclassof B\nclass B subclassof A\n"), ErrorCode::kCycleDetected);
  EXPECT_EQ(load_error("class A subclassof A\n"), ErrorCode::kCycleDetected);
  EXPECT_EQ(load_error("class A\nclass B\ndisjoint A B\nindividual x type A\nindividual x type B\n"),
            ErrorCode::kDisjointnessViolation);
  EXPECT_EQ(load_error("class A\nclass B subclassof A\nclass C\ndisjoint A C\n"
                       "individual x type B\nindividual x type C\n"),
            ErrorCode::kDisjointnessViolation);
  EXPECT_EQ(load_error("class A\nproperty p inverse q\nproperty q\n"), ErrorCode::kInverseAsymmetry);
  EXPECT_EQ(load_error("class A\nproperty p domain Z\n"), ErrorCode::kUnknownReference);
  EXPECT_EQ(load_error("class A\nclass B\nindividual a type A\nindividual b type B\n"
                       "property p domain B\nlink a p b\n"),
            ErrorCode::kDomainRangeViolation);
  EXPECT_EQ(load_error("class A\nclass A subclassof B\nclass B\n"),
            ErrorCode::kConflictingDeclaration);
  EXPECT_EQ(load_error("class A\nbogus line\n"), ErrorCode::kSyntaxError);
}

TEST(OntologyErrors, LiteralObjectOnInverseProperty) {
  EXPECT_ANY_THROW(Ontology::load("class A\nindividual a type A\n"
                                  "property p inverse q\nproperty q inverse p\nlink a p true\n"));
}

TEST(OntologyMutants, EveryLineDeletionIsValidOrRejectedCleanly) {
  // Deleting any single line either leaves a valid ontology or raises a
  // structured error; nothing else escapes.
  const std::string valid = testing::read_file(testing::hec_dir() / "hec.odf");
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < valid.size()) {
    const auto nl = valid.find('\n', start);
    lines.push_back(valid.substr(start, nl - start));
    if (nl == std::string::npos) break;
    start = nl + 1;
  }
  for (std::size_t skip = 0; skip < lines.size(); ++skip) {
    std::string text;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (i != skip) text += lines[i] + "\n";
    }
    try {
      Ontology::load(text);
    } catch (const Error&) {
    } catch (...) {
      ADD_FAILURE() << "non-oqr exception after deleting line " << skip + 1;
    }
  }
}

}  // namespace
}  // namespace oqr
