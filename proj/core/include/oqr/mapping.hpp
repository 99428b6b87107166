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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "oqr/dl_expr.hpp"

namespace oqr {

class Ontology;

/// `database.relation`; SQL is emitted against `relation` alone.
struct QualifiedName {
  std::string database;
  std::string relation;

  std::string str() const { return database + "." + relation; }
  auto operator<=>(const QualifiedName&) const = default;
};

struct RelationMeta {
  QualifiedName name;
  std::vector<std::string> columns;
  std::vector<std::string> primary_key;

  bool has_column(std::string_view column) const;
  bool operator==(const RelationMeta&) const = default;
};

struct ColumnBinding {
  std::string property;
  QualifiedName relation;
  std::string column;

  bool operator==(const ColumnBinding&) const = default;
};

/// Retained for completeness of the mapping file; translation ignores it.
struct ForeignKey {
  QualifiedName from_relation;
  std::string from_column;
  QualifiedName to_relation;
  std::string to_column;
};

class MappingRegistry {
 public:
  /// Parses an Ontology Mapping File; properties must exist in `ont`.
  static MappingRegistry load(std::string_view text, const Ontology& ont);

  const std::map<QualifiedName, RelationMeta>& relations() const { return relations_; }
  const std::map<std::string, ColumnBinding>& bindings() const { return bindings_; }
  const std::vector<ForeignKey>& foreign_keys() const { return foreign_keys_; }

  const RelationMeta* find_relation(const QualifiedName& name) const;
  const RelationMeta& relation(const QualifiedName& name) const;

  /// Binding of `property`, else of its nearest bound ancestor.
  /// Throws UnmappedProperty when no ancestor is bound.
  const ColumnBinding& resolve_property(const Ontology& ont, std::string_view property) const;

  /// The single relation every property in `expr` resolves to.
  /// Throws CrossRelationExpression when the atoms span several relations.
  const RelationMeta& relation_of(const Ontology& ont, const Expr& expr) const;
  const RelationMeta& relation_of(const Ontology& ont, const std::vector<Expr>& exprs) const;

  std::string to_omf() const;

 private:
  std::map<QualifiedName, RelationMeta> relations_;
  std::map<std::string, ColumnBinding> bindings_;
  std::vector<ForeignKey> foreign_keys_;
};

inline MappingRegistry load_mappings(std::string_view text, const Ontology& ont) {
  return MappingRegistry::load(text, ont);
}

}  // namespace oqr
