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

#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <string>

#include "oqr/concept_store.hpp"
#include "oqr/engine.hpp"
#include "oqr/error.hpp"
#include "test_support.hpp"

namespace oqr {
namespace {

using testing::hec;

ConceptStore::Clock counter_clock() {
  auto n = std::make_shared<int>(0);
  return [n] {
    char buf[32];
    std::snprintf(buf, sizeof buf, "2026-10-15T10:%02d:%02dZ", *n / 60 % 60, *n % 60);
    ++*n;
    return std::string(buf);
  };
}

// Random definitions that plan successfully.
ConceptDefinition random_concept(testing::ExprGen& gen, std::mt19937_64& rng, int i) {
  const auto& h = hec();
  while (true) {
    ConceptDefinition def{"CONCEPT_" + std::to_string(i), {}};
    const std::size_t n = 1 + rng() % 3;
    for (std::size_t j = 0; j < n; ++j) def.assertions.push_back(gen.expr(4, n == 1));
    try {
      plan_concept(def, h.reg, h.ont);
      return def;
    } catch (const Error&) {
    }
  }
}

TEST(ConceptStore, SerializationIsByteStable) {
  const auto& h = hec();
  testing::ExprGen gen(h.ont, 31, &h.reg);
  std::mt19937_64 rng(32);
  ConceptStore store;
  store.set_clock(counter_clock());
  for (int i = 0; i < 100; ++i) store.save(random_concept(gen, rng, i), h.ont, h.reg);
  const std::string text = store.serialize();
  const ConceptStore back = ConceptStore::parse(text, h.ont);
  EXPECT_EQ(back.serialize(), text);
  ASSERT_EQ(back.list().size(), 100u);
  for (const auto& [name, sc] : store.concepts()) {
    const StoredConcept* other = back.find(name);
    ASSERT_NE(other, nullptr);
    EXPECT_EQ(other->definition, sc.definition);
    EXPECT_EQ(other->created, sc.created);
    EXPECT_EQ(other->modified, sc.modified);
  }
}

TEST(ConceptStore, SampleFileRoundTrips) {
  const std::string text = testing::read_file(testing::hec_dir() / "concepts.dlq");
  EXPECT_EQ(ConceptStore::parse(text, hec().ont).serialize(), text);
}

TEST(ConceptStore, SaveDeleteSequencesMatchAModel) {
  const auto& h = hec();
  testing::TempDir dir;
  const auto path = dir.path() / "concepts.dlq";
  testing::ExprGen gen(h.ont, 33, &h.reg);
  std::mt19937_64 rng(34);

  ConceptStore store = ConceptStore::open(path, h.ont);
  store.set_clock(counter_clock());
  std::map<std::string, ConceptDefinition> model;
  for (int step = 0; step < 300; ++step) {
    const std::string name = "CONCEPT_" + std::to_string(rng() % 8);
    switch (rng() % 3) {
      case 0:
      case 1: {
        ConceptDefinition def = random_concept(gen, rng, 0);
        def.name = name;
        const bool overwrite = rng() % 2;
        const bool exists = model.count(name) > 0;
        if (exists && !overwrite) {
          EXPECT_THROW(
              {
                try {
                  store.save(def, h.ont, h.reg, false);
                } catch (const Error& e) {
                  EXPECT_EQ(e.code(), ErrorCode::kConflict);
                  throw;
                }
              },
              Error);
        } else {
          EXPECT_EQ(store.save(def, h.ont, h.reg, overwrite), exists);
          model[name] = def;
        }
        break;
      }
      default:
        if (model.erase(name)) {
          store.remove(name);
        } else {
          EXPECT_THROW(store.remove(name), Error);
        }
    }
    ASSERT_EQ(store.list().size(), model.size());
    for (const auto& [n, def] : model) EXPECT_EQ(store.lookup(n), def);
  }
  const ConceptStore reopened = ConceptStore::open(path, h.ont);
  EXPECT_EQ(reopened.serialize(), store.serialize());
}

TEST(ConceptStore, TimestampsTrackCreationAndModification) {
  const auto& h = hec();
  ConceptStore store;
  store.set_clock(counter_clock());
  const std::string text = "concept A { assert hasClinicalTestName some HEADACHES }";
  EXPECT_FALSE(store.save_text(text, h.ont, h.reg));
  EXPECT_TRUE(store.save_text(text, h.ont, h.reg));
  const StoredConcept* sc = store.find("a");
  ASSERT_NE(sc, nullptr);
  EXPECT_EQ(sc->created, "2026-10-15T10:00:00Z");
  EXPECT_EQ(sc->modified, "2026-10-15T10:00:01Z");
}

TEST(ConceptStore, ValidationFailures) {
  const auto& h = hec();
  ConceptStore store;
  auto code_of = [&](const std::string& text, std::optional<std::size_t>* pos = nullptr) {
    try {
      store.save_text(text, h.ont, h.reg);
    } catch (const Error& e) {
      if (pos) *pos = e.position;
      return e.code();
    }
    ADD_FAILURE() << text;
    return ErrorCode::kSyntaxError;
  };
  std::optional<std::size_t> pos;
  EXPECT_EQ(code_of("concept A { assert hasClinicalTestName some Bogus }", &pos),
            ErrorCode::kValidationFailed);
  EXPECT_EQ(pos, std::optional<std::size_t>(44));
  EXPECT_EQ(code_of("concept A { assert isOrthopaedicSequeleaValueOf some HEADACHES }"),
            ErrorCode::kValidationFailed);
  EXPECT_EQ(code_of("concept A { assert hasClinicalTestName only HEADACHES; assert "
                    "hasClinicalTestValue has TRUE }"),
            ErrorCode::kValidationFailed);
  EXPECT_TRUE(store.list().empty());
}

TEST(ConceptStore, LookupSuggestsNearNames) {
  const auto& h = hec();
  try {
    h.store.lookup("Brain_Tumor_Disease-X_Suspect");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownConcept);
    EXPECT_EQ(e.suggestions, std::vector<std::string>{"BRAIN_TUMOR_DISEASE_X_SUSPECTS"});
  }
  try {
    h.store.lookup("nothing_like_it");
    FAIL();
  } catch (const Error& e) {
    EXPECT_TRUE(e.suggestions.empty());
  }
  EXPECT_EQ(h.store.lookup("astrocytoma tumor").name, "ASTROCYTOMA_TUMOR");
}

TEST(ConceptStore, FailedWriteLeavesStateUnchanged) {
  const auto& h = hec();
  testing::TempDir dir;
  ConceptStore store = ConceptStore::open(dir.path() / "missing" / "concepts.dlq", h.ont);
  try {
    store.save_text("concept A { assert hasClinicalTestName some HEADACHES }", h.ont, h.reg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kStorageError);
  }
  EXPECT_TRUE(store.list().empty());
}

TEST(ConceptStore, CorruptFileIsAStorageError) {
  const auto& h = hec();
  testing::TempDir dir;
  const auto path = dir.path() / "concepts.dlq";
  std::ofstream(path) << "concept A { assert nothing }";
  try {
    ConceptStore::open(path, h.ont);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kStorageError);
  }
}

}  // namespace
}  // namespace oqr
