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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oqr/mapping.hpp"

namespace oqr {

/// One CSV field. An empty field is NULL.
using Cell = std::optional<std::string>;
using Row = std::vector<Cell>;

struct Table {
  std::vector<std::string> header;
  std::vector<Row> rows;

  /// Index of `column` in the header. Throws MissingColumn.
  std::size_t column_index(std::string_view column) const;
};

/// Deduplicated rows in lexicographic order (NULL sorts first).
struct RowSet {
  std::vector<std::string> header;
  std::vector<Row> rows;

  bool operator==(const RowSet&) const = default;

  /// Sorts and removes duplicates.
  void canonicalize();
};

class Database {
 public:
  /// Reads `<db>.<relation>.csv` from `dir` for every relation declared in
  /// `reg`. Cells are canonicalized like ontology names.
  static Database load_csv(const std::filesystem::path& dir, const MappingRegistry& reg,
                           std::vector<std::string>* warnings = nullptr);

  /// Parses one CSV document against `meta`.
  static Table parse_table(std::string_view csv, const RelationMeta& meta);

  void put(const QualifiedName& name, Table table) { tables_[name] = std::move(table); }
  const Table* find(const QualifiedName& name) const;
  /// Throws MissingRelation.
  const Table& table(const QualifiedName& name) const;
  const std::map<QualifiedName, Table>& tables() const { return tables_; }

 private:
  std::map<QualifiedName, Table> tables_;
};

inline Database load_csv(const std::filesystem::path& dir, const MappingRegistry& reg,
                         std::vector<std::string>* warnings = nullptr) {
  return Database::load_csv(dir, reg, warnings);
}

/// Renders a cell for display; NULL prints as an empty string.
std::string cell_text(const Cell& cell);

}  // namespace oqr
