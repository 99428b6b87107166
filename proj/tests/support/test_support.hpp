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
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oqr/concept_store.hpp"
#include "oqr/database.hpp"
#include "oqr/dl_expr.hpp"
#include "oqr/mapping.hpp"
#include "oqr/ontology.hpp"

namespace oqr::testing {

std::filesystem::path data_dir();
std::filesystem::path hec_dir();
std::string read_file(const std::filesystem::path& path);

/// The shipped HeC sample, loaded once.
struct Hec {
  Ontology ont;
  MappingRegistry reg;
  Database db;
  ConceptStore store;
};
const Hec& hec();

inline const QualifiedName kPatients{"hec", "patient_information"};

/// Runs `sql` on an in-memory SQLite database holding every table of `db`
/// (bare relation names, TEXT columns, NULL for empty cells).
RowSet run_sqlite(const Database& db, const std::string& sql);

/// Random patient_information data over the sample's tokens, with NULLs.
Database random_patients(std::uint64_t seed);

/// "101:DOUBLE_VISION" for each row of the patient view.
std::set<std::string> patient_rows(const RowSet& rows);
/// First column of each row.
std::set<std::string> first_column(const RowSet& rows);

/// Random canonical ASTs over the names of an ontology. `only` appears at the
/// root only. Depth counts atoms as 1. With `mapped`, only properties that
/// resolve to a column are used.
class ExprGen {
 public:
  ExprGen(const Ontology& ont, std::uint64_t seed, const MappingRegistry* mapped = nullptr);
  Expr expr(int depth, bool allow_only = true);

 private:
  Expr atom(bool allow_only);
  Operand individuals();
  std::string value();

  std::mt19937_64 rng_;
  std::vector<std::string> classes_;
  std::vector<std::string> properties_;
  std::vector<std::string> individuals_;
};

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace oqr::testing
