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

#include "oqr/database.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "oqr/error.hpp"
#include "oqr/names.hpp"

namespace oqr {
namespace {

// Splits one CSV record. Double-quoted fields may contain commas and "".
std::vector<std::string> split_record(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) {
    Error err(ErrorCode::kArityError,
              "line " + std::to_string(line_no) + ": unterminated quoted field");
    err.line = line_no;
    throw err;
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

std::size_t Table::column_index(std::string_view column) const {
  auto it = std::find(header.begin(), header.end(), column);
  if (it == header.end()) fail(ErrorCode::kMissingColumn, "no column '" + std::string(column) + "'");
  return static_cast<std::size_t>(it - header.begin());
}

void RowSet::canonicalize() {
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
}

Table Database::parse_table(std::string_view csv, const RelationMeta& meta) {
  Table table;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool have_header = false;
  while (pos < csv.size()) {
    std::size_t nl = csv.find('\n', pos);
    if (nl == std::string_view::npos) nl = csv.size();
    std::string_view line = csv.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!have_header) {
      if (line_no == 1 && line.size() >= 3 && line.substr(0, 3) == "\xEF\xBB\xBF") {
        line.remove_prefix(3);
      }
      for (const auto& f : split_record(line, line_no)) table.header.push_back(trim(f));
      if (table.header != meta.columns) {
        std::string want;
        for (const auto& c : meta.columns) want += (want.empty() ? "" : ",") + c;
        Error err(ErrorCode::kHeaderMismatch, meta.name.str() + ": header '" + std::string(line) +
                                                  "' does not match declared columns '" + want +
                                                  "'");
        err.line = line_no;
        throw err;
      }
      have_header = true;
      continue;
    }
    if (trim(line).empty()) continue;
    auto fields = split_record(line, line_no);
    if (fields.size() != table.header.size()) {
      Error err(ErrorCode::kArityError,
                meta.name.str() + " line " + std::to_string(line_no) + ": expected " +
                    std::to_string(table.header.size()) + " fields, got " +
                    std::to_string(fields.size()));
      err.line = line_no;
      throw err;
    }
    Row row;
    row.reserve(fields.size());
    for (const auto& f : fields) {
      std::string token = canonical_name(f);
      row.push_back(token.empty() ? Cell{} : Cell{std::move(token)});
    }
    table.rows.push_back(std::move(row));
  }
  if (!have_header) {
    fail(ErrorCode::kHeaderMismatch, meta.name.str() + ": missing header row");
  }
  return table;
}

Database Database::load_csv(const std::filesystem::path& dir, const MappingRegistry& reg,
                            std::vector<std::string>* warnings) {
  Database db;
  std::set<std::pair<QualifiedName, std::string>> mapped;
  for (const auto& [prop, b] : reg.bindings()) mapped.insert({b.relation, b.column});

  for (const auto& [name, meta] : reg.relations()) {
    const auto path = dir / (name.str() + ".csv");
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::kMissingRelation, "missing data file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    Table table = parse_table(buf.str(), meta);
    if (warnings) {
      for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (!mapped.count({name, table.header[c]})) continue;
        const auto nulls = std::count_if(table.rows.begin(), table.rows.end(),
                                         [c](const Row& r) { return !r[c].has_value(); });
        if (nulls > 0) {
          warnings->push_back(name.str() + "." + table.header[c] + " has " +
                              std::to_string(nulls) +
                              " NULL value(s); NULL never equals a token and always satisfies a "
                              "negated atom");
        }
      }
    }
    db.put(name, std::move(table));
  }
  return db;
}

const Table* Database::find(const QualifiedName& name) const {
  auto it = tables_.find(name);
  return it == tables_.end() ? nullptr : &it->second;
}

const Table& Database::table(const QualifiedName& name) const {
  const Table* t = find(name);
  if (!t) fail(ErrorCode::kMissingRelation, "relation " + name.str() + " is not loaded");
  return *t;
}

std::string cell_text(const Cell& cell) { return cell.value_or(std::string()); }

}  // namespace oqr
