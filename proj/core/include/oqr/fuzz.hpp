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

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oqr/database.hpp"
#include "oqr/dl_expr.hpp"

namespace oqr {

/// One randomly generated world plus the expressions checked against it.
/// Ontology and mappings are kept as text so every case also exercises the
/// loaders and the parser.
struct FuzzCase {
  std::uint64_t seed = 0;
  std::string odf;
  std::string omf;
  std::map<QualifiedName, Table> tables;
  Expr assertion;
  ConceptDefinition concept_def;
};

/// Description of an engine/oracle disagreement.
struct Divergence {
  std::string what;
  std::string engine;
  std::string oracle;
};

struct FuzzReport {
  std::size_t cases = 0;
  std::size_t agreements = 0;
  /// Comparisons where both sides produced a result rather than an error.
  std::size_t row_results = 0;
  std::size_t key_results = 0;
  std::size_t nonempty_results = 0;
  /// Minimized reproducer of the first divergence, if any.
  std::optional<std::string> reproducer;
};

/// Random world: <= 6 classes, <= 4 properties, <= 8 entities with <= 6 rows
/// each, expressions of depth <= 4.
FuzzCase generate_case(std::uint64_t seed);

/// Runs engine and oracle on `c`. Agreement means equal rows (assertion) and
/// equal keys (concept), or the same error code on both sides.
struct CaseStats {
  bool rows_compared = false;
  bool keys_compared = false;
  bool nonempty = false;
};
std::optional<Divergence> check_case(const FuzzCase& c, CaseStats* stats = nullptr);

/// Greedy shrinking: drops rows, assertions and subexpressions while the case
/// still diverges.
FuzzCase minimize(FuzzCase c);

/// Self-contained text of a case: ODF, OMF, CSV files and DLQ.
std::string describe_case(const FuzzCase& c);

FuzzReport run_fuzz(std::uint64_t seed, std::size_t cases,
                    const std::function<void(std::size_t, bool)>& progress = {});

/// CSV text of a table, header first.
std::string table_csv(const Table& t);

}  // namespace oqr
