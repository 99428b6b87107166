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

#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>
#include <string>

#include "oqr/backend.hpp"
#include "oqr/concept_store.hpp"
#include "oqr/database.hpp"
#include "oqr/dl_expr.hpp"
#include "oqr/engine.hpp"
#include "oqr/mapping.hpp"
#include "oqr/ontology.hpp"
#include "oqr/service.hpp"

namespace {

const std::filesystem::path kHec = std::filesystem::path(OQR_BENCH_DATA_DIR) / "hec";

constexpr const char* kQuery1 =
    "hasClinicalTestName some DOUBLE_VISION union hasClinicalTestName some HEADACHES union "
    "hasClinicalTestName some ORTHOPAEDIC_SEQUELEA";

struct Fixture {
  oqr::Ontology ont = oqr::Ontology::load(oqr::read_text_file(kHec / "hec.odf"));
  oqr::MappingRegistry reg =
      oqr::MappingRegistry::load(oqr::read_text_file(kHec / "hec.omf"), ont);
  oqr::ConceptStore store =
      oqr::ConceptStore::parse(oqr::read_text_file(kHec / "concepts.dlq"), ont);
  oqr::Database db = oqr::Database::load_csv(kHec / "fixtures", reg);
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

// Patient table with `n` patients, each holding a few random test rows.
oqr::Database synthetic(std::size_t n) {
  static const char* kTests[] = {"DOUBLE_VISION", "HEADACHES", "BACTERIAL_INFECTION",
                                 "ORTHOPAEDIC_SEQUELEA", "THROMBOSIS_SEQUELEA"};
  static const char* kValues[] = {"TRUE", "FALSE", "HIGH", "LOW"};
  std::mt19937 rng(42);
  oqr::Table t;
  t.header = {"patient_id", "clinical_test_name", "clinical_test_value"};
  for (std::size_t p = 0; p < n; ++p) {
    const int rows = 1 + static_cast<int>(rng() % 4);
    for (int r = 0; r < rows; ++r) {
      t.rows.push_back({std::to_string(p), std::string(kTests[rng() % 5]),
                        std::string(kValues[rng() % 4])});
    }
  }
  oqr::Database db;
  db.put({"hec", "patient_information"}, std::move(t));
  return db;
}

}  // namespace

static void BM_ParseQuery1(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(oqr::parse_expression(kQuery1, f.ont));
  }
}
BENCHMARK(BM_ParseQuery1);

static void BM_TranslateQuery1(benchmark::State& state) {
  const auto& f = fixture();
  const oqr::Expr e = oqr::parse_expression(kQuery1, f.ont);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oqr::emit_sql(oqr::translate_assertion(e, f.reg, f.ont)));
  }
}
BENCHMARK(BM_TranslateQuery1);

static void BM_PlanStoredConcepts(benchmark::State& state) {
  const auto& f = fixture();
  const auto terms = f.store.list();
  for (auto _ : state) {
    for (const auto& t : terms) {
      benchmark::DoNotOptimize(oqr::translate_term(t, f.store, f.reg, f.ont));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(terms.size()));
}
BENCHMARK(BM_PlanStoredConcepts);

static void BM_EvalSelect(benchmark::State& state) {
  const auto& f = fixture();
  const oqr::Database db = synthetic(static_cast<std::size_t>(state.range(0)));
  const auto plan = oqr::translate_assertion(oqr::parse_expression(kQuery1, f.ont), f.reg, f.ont);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oqr::eval_ra(plan, db));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EvalSelect)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

// Division over the stored multi-assertion concept.
static void BM_EvalDivision(benchmark::State& state) {
  const auto& f = fixture();
  const oqr::Database db = synthetic(static_cast<std::size_t>(state.range(0)));
  const auto plan =
      oqr::translate_term("BRAIN_TUMOR_DISEASE_X_SUSPECTS_COMPLEX", f.store, f.reg, f.ont);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oqr::eval_ra(plan, db));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EvalDivision)->RangeMultiplier(4)->Range(64, 16384)->Complexity();
BENCHMARK_MAIN();
