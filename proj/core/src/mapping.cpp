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

#include "oqr/mapping.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "line_tokens.hpp"
#include "oqr/error.hpp"
#include "oqr/names.hpp"
#include "oqr/ontology.hpp"

namespace oqr {
namespace {

using detail::fail_at;
using detail::TokenizedLine;

// SQL-safe identifiers: no hyphens, unlike ontology names.
bool is_sql_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::vector<std::string> split_dots(std::string_view s) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t dot = s.find('.', start);
    parts.emplace_back(s.substr(start, dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return parts;
}

QualifiedName parse_relation_ref(const TokenizedLine& line, std::size_t idx) {
  if (idx >= line.words.size()) fail_at(ErrorCode::kSyntaxError, line.number, "expected <db>.<relation>");
  auto parts = split_dots(line.words[idx]);
  if (parts.size() != 2 || !is_sql_identifier(parts[0]) || !is_sql_identifier(parts[1])) {
    fail_at(ErrorCode::kSyntaxError, line.number,
            "expected <db>.<relation>, got '" + line.words[idx] + "'");
  }
  return {parts[0], parts[1]};
}

std::pair<QualifiedName, std::string> parse_column_ref(const TokenizedLine& line, std::size_t idx) {
  if (idx >= line.words.size()) {
    fail_at(ErrorCode::kSyntaxError, line.number, "expected <db>.<relation>.<column>");
  }
  auto parts = split_dots(line.words[idx]);
  if (parts.size() != 3 || !std::all_of(parts.begin(), parts.end(), is_sql_identifier)) {
    fail_at(ErrorCode::kSyntaxError, line.number,
            "expected <db>.<relation>.<column>, got '" + line.words[idx] + "'");
  }
  return {{parts[0], parts[1]}, parts[2]};
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

bool RelationMeta::has_column(std::string_view column) const {
  return std::find(columns.begin(), columns.end(), column) != columns.end();
}

MappingRegistry MappingRegistry::load(std::string_view text, const Ontology& ont) {
  MappingRegistry reg;
  struct PendingMap {
    std::size_t line;
    std::string property;
    QualifiedName relation;
    std::string column;
  };
  struct PendingFk {
    std::size_t line;
    ForeignKey fk;
  };
  std::vector<PendingMap> maps;
  std::vector<PendingFk> fks;

  for (const TokenizedLine& line : detail::tokenize_lines(text)) {
    const std::string kw = lower(line.words[0]);
    if (kw == "relation") {
      RelationMeta meta;
      meta.name = parse_relation_ref(line, 1);
      std::size_t i = 2;
      if (i >= line.words.size() || lower(line.words[i]) != "columns") {
        fail_at(ErrorCode::kSyntaxError, line.number, "expected 'columns'");
      }
      ++i;
      while (i < line.words.size() && lower(line.words[i]) != "pk") {
        if (!is_sql_identifier(line.words[i])) {
          fail_at(ErrorCode::kSyntaxError, line.number, "invalid column '" + line.words[i] + "'");
        }
        if (meta.has_column(line.words[i])) {
          fail_at(ErrorCode::kConflictingDeclaration, line.number,
                  "duplicate column '" + line.words[i] + "'");
        }
        meta.columns.push_back(line.words[i++]);
      }
      if (meta.columns.empty()) fail_at(ErrorCode::kSyntaxError, line.number, "no columns declared");
      if (i >= line.words.size()) fail_at(ErrorCode::kSyntaxError, line.number, "expected 'pk'");
      ++i;
      for (; i < line.words.size(); ++i) {
        if (!meta.has_column(line.words[i])) {
          fail_at(ErrorCode::kUnknownReference, line.number,
                  "primary key column '" + line.words[i] + "' is not a column of " +
                      meta.name.str());
        }
        meta.primary_key.push_back(line.words[i]);
      }
      if (meta.primary_key.empty()) {
        fail_at(ErrorCode::kSyntaxError, line.number, "primary key must name at least one column");
      }
      auto [it, inserted] = reg.relations_.emplace(meta.name, meta);
      if (!inserted && !(it->second == meta)) {
        fail_at(ErrorCode::kConflictingDeclaration, line.number,
                "relation " + meta.name.str() + " redeclared with different content");
      }
    } else if (kw == "fk") {
      if (line.words.size() != 4 || lower(line.words[2]) != "references") {
        fail_at(ErrorCode::kSyntaxError, line.number,
                "expected 'fk <db>.<rel>.<col> references <db>.<rel>.<col>'");
      }
      auto [from_rel, from_col] = parse_column_ref(line, 1);
      auto [to_rel, to_col] = parse_column_ref(line, 3);
      fks.push_back({line.number, {from_rel, from_col, to_rel, to_col}});
    } else if (kw == "map") {
      if (line.words.size() != 4 || line.words[2] != "->") {
        fail_at(ErrorCode::kSyntaxError, line.number,
                "expected 'map <Property> -> <db>.<rel>.<col>'");
      }
      if (!is_identifier(line.words[1])) {
        fail_at(ErrorCode::kSyntaxError, line.number, "invalid property '" + line.words[1] + "'");
      }
      auto [rel, col] = parse_column_ref(line, 3);
      maps.push_back({line.number, canonical_name(line.words[1]), rel, col});
    } else {
      fail_at(ErrorCode::kSyntaxError, line.number, "unknown declaration '" + line.words[0] + "'");
    }
  }

  auto require_column = [&](std::size_t line, const QualifiedName& rel, const std::string& col) {
    auto it = reg.relations_.find(rel);
    if (it == reg.relations_.end()) {
      fail_at(ErrorCode::kUnknownReference, line, "undeclared relation " + rel.str());
    }
    if (!it->second.has_column(col)) {
      fail_at(ErrorCode::kUnknownReference, line,
              "relation " + rel.str() + " has no column '" + col + "'");
    }
  };

  for (const auto& [line, fk] : fks) {
    require_column(line, fk.from_relation, fk.from_column);
    require_column(line, fk.to_relation, fk.to_column);
    reg.foreign_keys_.push_back(fk);
  }
  for (const auto& m : maps) {
    if (!ont.find_property(m.property)) {
      fail_at(ErrorCode::kUnknownReference, m.line, "unknown property " + m.property);
    }
    require_column(m.line, m.relation, m.column);
    auto [it, inserted] = reg.bindings_.emplace(m.property, ColumnBinding{m.property, m.relation, m.column});
    if (!inserted) {
      fail_at(ErrorCode::kDuplicateBinding, m.line, "property " + m.property + " is mapped twice");
    }
  }
  return reg;
}

const RelationMeta* MappingRegistry::find_relation(const QualifiedName& name) const {
  auto it = relations_.find(name);
  return it == relations_.end() ? nullptr : &it->second;
}

const RelationMeta& MappingRegistry::relation(const QualifiedName& name) const {
  const RelationMeta* meta = find_relation(name);
  if (!meta) fail(ErrorCode::kMissingRelation, "undeclared relation " + name.str());
  return *meta;
}

const ColumnBinding& MappingRegistry::resolve_property(const Ontology& ont,
                                                       std::string_view property) const {
  for (const auto& name : ont.property_lineage(property)) {
    auto it = bindings_.find(name);
    if (it != bindings_.end()) return it->second;
  }
  Error err(ErrorCode::kUnmappedProperty,
            "property " + canonical_name(property) + " has no mapping on itself or any parent");
  throw err;
}

const RelationMeta& MappingRegistry::relation_of(const Ontology& ont, const Expr& expr) const {
  return relation_of(ont, std::vector<Expr>{expr});
}

const RelationMeta& MappingRegistry::relation_of(const Ontology& ont,
                                                 const std::vector<Expr>& exprs) const {
  std::set<QualifiedName> seen;
  for (const auto& expr : exprs) {
    for (const auto& prop : properties_of(expr)) {
      seen.insert(resolve_property(ont, prop).relation);
    }
  }
  if (seen.empty()) fail(ErrorCode::kValidationFailed, "expression references no property");
  if (seen.size() > 1) {
    std::string names;
    for (const auto& q : seen) {
      if (!names.empty()) names += ", ";
      names += q.str();
    }
    fail(ErrorCode::kCrossRelationExpression, "expression spans several relations: " + names);
  }
  return relation(*seen.begin());
}

std::string MappingRegistry::to_omf() const {
  std::ostringstream out;
  for (const auto& [name, meta] : relations_) {
    out << "relation " << name.str() << " columns";
    for (const auto& c : meta.columns) out << ' ' << c;
    out << " pk";
    for (const auto& k : meta.primary_key) out << ' ' << k;
    out << '\n';
  }
  for (const auto& fk : foreign_keys_) {
    out << "fk " << fk.from_relation.str() << '.' << fk.from_column << " references "
        << fk.to_relation.str() << '.' << fk.to_column << '\n';
  }
  for (const auto& [prop, b] : bindings_) {
    out << "map " << prop << " -> " << b.relation.str() << '.' << b.column << '\n';
  }
  return out.str();
}

}  // namespace oqr
