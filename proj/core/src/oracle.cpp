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

// Written as a separate interpreter over the expression tree. Nothing here
// goes through Pred, RaExpr or eval_ra.

#include "oqr/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "oqr/error.hpp"
#include "oqr/ontology.hpp"

namespace oqr {
namespace {

struct Context {
  const Table& table;
  const MappingRegistry& reg;
  const Ontology& ont;

  std::size_t column_of(const std::string& property) const {
    const std::string& col = reg.resolve_property(ont, property).column;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
      if (table.header[i] == col) return i;
    }
    fail(ErrorCode::kMissingColumn, "no column '" + col + "'");
  }

  std::vector<std::string> admissible(const Operand& op) const {
    if (op.form == OperandForm::kClass) return ont.extension_tokens(op.names.front());
    return op.names;
  }
};

bool contains(const std::vector<std::string>& tokens, const Cell& cell) {
  return cell && std::find(tokens.begin(), tokens.end(), *cell) != tokens.end();
}

bool holds(const Expr& e, const Row& row, const Context& cx) {
  switch (e.kind) {
    case ExprKind::kSome:
      return contains(cx.admissible(e.operand), row[cx.column_of(e.property)]);
    case ExprKind::kHas: {
      const bool hit = contains(e.operand.names, row[cx.column_of(e.property)]);
      return e.negated ? !hit : hit;
    }
    case ExprKind::kComplement:
      if (e.children.front().kind == ExprKind::kOnly) {
        fail(ErrorCode::kUnsupported, "complement of an 'only' restriction has no translation");
      }
      return !holds(e.children.front(), row, cx);
    case ExprKind::kUnion:
      return std::any_of(e.children.begin(), e.children.end(),
                         [&](const Expr& c) { return holds(c, row, cx); });
    case ExprKind::kIntersection:
      return std::all_of(e.children.begin(), e.children.end(),
                         [&](const Expr& c) { return holds(c, row, cx); });
    case ExprKind::kOnly:
      break;
  }
  fail(ErrorCode::kUnsupported, "'only' is supported only as the root of an assertion");
}

// Rejects `only` below the root before any row is looked at, so that empty
// tables report the same errors as the engine.
void check_only(const Expr& e, bool root) {
  if (e.kind == ExprKind::kOnly && !root) {
    fail(ErrorCode::kUnsupported, "'only' is supported only as the root of an assertion");
  }
  for (const auto& c : e.children) check_only(c, false);
}

// A complement over an `only` (at any depth below it) cannot be normalized.
void check_complement(const Expr& e, int complements) {
  if (e.kind == ExprKind::kOnly && complements % 2 == 1) {
    fail(ErrorCode::kUnsupported, "complement of an 'only' restriction has no translation");
  }
  for (const auto& c : e.children) {
    check_complement(c, complements + (e.kind == ExprKind::kComplement ? 1 : 0));
  }
}

// Strips complement pairs off the root: complementOf(complementOf(only ..)).
const Expr& peel(const Expr& e) {
  const Expr* cur = &e;
  while (cur->kind == ExprKind::kComplement &&
         cur->children.front().kind == ExprKind::kComplement) {
    cur = &cur->children.front().children.front();
  }
  return *cur;
}

std::size_t find_column(const Table& table, const std::string& name) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (table.header[i] == name) return i;
  }
  fail(ErrorCode::kMissingColumn, "no column '" + name + "'");
}

Row key_of(const Row& row, const std::vector<std::size_t>& key_cols) {
  Row key;
  for (std::size_t i : key_cols) key.push_back(row[i]);
  return key;
}

}  // namespace

RowSet oracle_rows(const Expr& expr, const Database& db, const MappingRegistry& reg,
                   const Ontology& ont) {
  const Expr& root = peel(expr);
  check_only(root, true);
  check_complement(root, 0);
  const RelationMeta& meta = reg.relation_of(ont, root);
  const Table& table = db.table(meta.name);
  const Context cx{table, reg, ont};

  RowSet out{table.header, {}};
  if (root.kind == ExprKind::kOnly) {
    const std::size_t entity_col = find_column(table, meta.primary_key.front());
    const std::size_t col = cx.column_of(root.property);
    const auto tokens = cx.admissible(root.operand);
    for (const auto& row : table.rows) {
      bool all_ok = true;
      for (const auto& other : table.rows) {
        if (other[entity_col] == row[entity_col] && !contains(tokens, other[col])) {
          all_ok = false;
          break;
        }
      }
      if (all_ok) out.rows.push_back(row);
    }
  } else {
    for (const auto& row : table.rows) {
      if (holds(root, row, cx)) out.rows.push_back(row);
    }
  }
  out.canonicalize();
  return out;
}

RowSet oracle_keys(const ConceptDefinition& def, const Database& db, const MappingRegistry& reg,
                   const Ontology& ont) {
  if (def.assertions.empty()) {
    fail(ErrorCode::kEmptyConcept, "concept " + def.name + " has no assertions");
  }
  const RelationMeta& meta = reg.relation_of(ont, def.assertions);
  const Table& table = db.table(meta.name);
  std::vector<std::size_t> key_cols;
  for (const auto& k : meta.primary_key) key_cols.push_back(find_column(table, k));

  RowSet out{meta.primary_key, {}};
  if (def.assertions.size() == 1) {
    for (const auto& row : oracle_rows(def.assertions.front(), db, reg, ont).rows) {
      out.rows.push_back(key_of(row, key_cols));
    }
    out.canonicalize();
    return out;
  }

  const Context cx{table, reg, ont};
  std::vector<std::set<std::string>> column_sets;
  for (const auto& a : def.assertions) {
    const Expr& root = peel(a);
    check_only(root, true);
    check_complement(root, 0);
    if (root.kind == ExprKind::kOnly) {
      fail(ErrorCode::kMixedOnlyAssertion,
           "concept " + def.name + ": an 'only' assertion cannot be combined with other assertions");
    }
    std::set<std::string> cols;
    for (const auto& p : properties_of(root)) cols.insert(reg.resolve_property(ont, p).column);
    column_sets.push_back(std::move(cols));
  }
  bool shared = false;
  for (std::size_t i = 0; i < column_sets.size(); ++i) {
    for (std::size_t j = i + 1; j < column_sets.size(); ++j) {
      for (const auto& c : column_sets[i]) shared = shared || column_sets[j].count(c) > 0;
    }
  }

  std::map<Row, std::vector<const Row*>> entities;
  for (const auto& row : table.rows) entities[key_of(row, key_cols)].push_back(&row);

  for (const auto& [key, rows] : entities) {
    bool satisfied = true;
    if (shared) {
      for (const auto& a : def.assertions) {
        bool some_row = false;
        for (const Row* row : rows) some_row = some_row || holds(peel(a), *row, cx);
        satisfied = satisfied && some_row;
      }
    } else {
      bool some_row = false;
      for (const Row* row : rows) {
        bool all = true;
        for (const auto& a : def.assertions) all = all && holds(peel(a), *row, cx);
        some_row = some_row || all;
      }
      satisfied = some_row;
    }
    if (satisfied) out.rows.push_back(key);
  }
  out.canonicalize();
  return out;
}

}  // namespace oqr
