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
#include <vector>

#include "oqr/database.hpp"
#include "oqr/ra.hpp"

namespace oqr {

/// Deterministic ANSI SQL for `plan`. Structurally equal plans give
/// byte-identical text. Tokens are single-quoted with embedded quotes doubled.
std::string emit_sql(const RaExpr& plan);

/// In-memory evaluation with set semantics. Row plans return full rows of the
/// relation, key plans return key tuples. Throws MissingRelation or
/// MissingColumn.
RowSet eval_ra(const RaExpr& plan, const Database& db);

/// Projects `rows` onto `key` and deduplicates.
RowSet project_rows(const RowSet& rows, const std::vector<std::string>& key);

}  // namespace oqr
