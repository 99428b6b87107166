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

#include "oqr/database.hpp"
#include "oqr/dl_expr.hpp"
#include "oqr/mapping.hpp"

namespace oqr {

class Ontology;

/// Brute-force row semantics of one assertion, read straight off the DL
/// constructs under a closed-world reading of the rows. `expr` need not be
/// normalized. Root `only` keeps the rows of entities (grouped by the first
/// key column) whose every row has an admissible value.
RowSet oracle_rows(const Expr& expr, const Database& db, const MappingRegistry& reg,
                   const Ontology& ont);

/// Keys of entities satisfying every assertion of `def`. With pairwise
/// disjoint column sets one row must satisfy all assertions at once;
/// otherwise each assertion needs some row of the entity.
RowSet oracle_keys(const ConceptDefinition& def, const Database& db, const MappingRegistry& reg,
                   const Ontology& ont);

}  // namespace oqr
