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

#include <string>
#include <string_view>
#include <vector>

#include "oqr/dl_expr.hpp"
#include "oqr/mapping.hpp"
#include "oqr/ra.hpp"

namespace oqr {

class ConceptStore;
class Ontology;

/// Negation normal form. Complements are pushed through union/intersection
/// (De Morgan) onto `some` atoms, or absorbed into `has` atoms as the negated
/// flag. Value sets are expanded: `P has {a b}` becomes a union of single
/// `has` atoms and `P some {a b}` a union of singleton `some` atoms. `only`
/// keeps its set. Throws Unsupported when a complement would wrap `only`.
Expr normalize(const Expr& expr);

/// Rewrites one assertion into a relational plan.
///
/// Root `only` becomes an anti-membership plan over the relation's key: the
/// violating rows are those whose column value lies outside the class
/// extension (or the listed individuals). Everything else becomes a single
/// selection whose predicate mirrors the normalized expression: `some` over a
/// class expands to a disjunction over its extension tokens, `has` is an
/// equality atom, complement is `not`, union/intersection are or/and.
///
/// Composite keys: anti-membership uses the first key column and appends a
/// warning.
RaExpr translate_assertion(const Expr& expr, const MappingRegistry& reg, const Ontology& ont,
                           std::vector<std::string>* warnings = nullptr);

/// Plans a named concept. A single assertion is translated directly. With
/// several assertions, pairwise-disjoint column sets give one selection over
/// the conjunction of the assertion predicates; any shared column gives an
/// intersection of per-assertion key selections (relational division).
RaExpr plan_concept(const ConceptDefinition& def, const MappingRegistry& reg, const Ontology& ont,
                    std::vector<std::string>* warnings = nullptr);

/// Looks `term` up in the concept store and plans the stored definition.
RaExpr translate_term(std::string_view term, const ConceptStore& store, const MappingRegistry& reg,
                      const Ontology& ont, std::vector<std::string>* warnings = nullptr);

/// Resolved column set of an assertion, sorted.
std::vector<std::string> assertion_columns(const Expr& expr, const MappingRegistry& reg,
                                           const Ontology& ont);

}  // namespace oqr
