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

#include <set>
#include <string>
#include <vector>

#include "oqr/backend.hpp"
#include "oqr/error.hpp"

namespace oqr {
namespace {

// Predicate compiled against a header: column names become indices.
struct BoundPred {
  PredKind kind;
  std::size_t column = 0;
  std::string token;
  std::vector<BoundPred> children;

  bool test(const Row& row) const {
    switch (kind) {
      case PredKind::kAtom:
        return row[column].has_value() && *row[column] == token;
      case PredKind::kNot:
        return !children.front().test(row);
      case PredKind::kAnd:
        for (const auto& c : children) {
          if (!c.test(row)) return false;
        }
        return true;
      case PredKind::kOr:
        for (const auto& c : children) {
          if (c.test(row)) return true;
        }
        return false;
    }
    return false;
  }
};

BoundPred bind(const Pred& p, const Table& table) {
  BoundPred b{p.kind, 0, p.token, {}};
  if (p.kind == PredKind::kAtom) b.column = table.column_index(p.column);
  for (const auto& c : p.children) b.children.push_back(bind(c, table));
  return b;
}

std::vector<std::size_t> indices(const std::vector<std::string>& cols,
                                 const std::vector<std::string>& header) {
  Table probe{header, {}};
  std::vector<std::size_t> out;
  for (const auto& c : cols) out.push_back(probe.column_index(c));
  return out;
}

Row pick(const Row& row, const std::vector<std::size_t>& idx) {
  Row out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(row[i]);
  return out;
}

}  // namespace

RowSet project_rows(const RowSet& rows, const std::vector<std::string>& key) {
  const auto idx = indices(key, rows.header);
  RowSet out{key, {}};
  for (const auto& r : rows.rows) out.rows.push_back(pick(r, idx));
  out.canonicalize();
  return out;
}

RowSet eval_ra(const RaExpr& plan, const Database& db) {
  if (plan.kind == PlanKind::kProjectKeys) {
    return project_rows(eval_ra(plan.input.front(), db), plan.key);
  }
  const Table& table = db.table(plan.relation);
  RowSet out;

  switch (plan.kind) {
    case PlanKind::kScan:
      out = {table.header, table.rows};
      break;
    case PlanKind::kSelect: {
      const BoundPred pred = bind(plan.predicate, table);
      out.header = table.header;
      for (const auto& row : table.rows) {
        if (pred.test(row)) out.rows.push_back(row);
      }
      break;
    }
    case PlanKind::kAntiMembership: {
      const BoundPred violating = bind(plan.predicate, table);
      const std::size_t k = table.column_index(plan.key.front());
      std::set<Cell> excluded;
      for (const auto& row : table.rows) {
        if (violating.test(row)) excluded.insert(row[k]);
      }
      out.header = table.header;
      for (const auto& row : table.rows) {
        if (!excluded.count(row[k])) out.rows.push_back(row);
      }
      break;
    }
    case PlanKind::kKeySetOp: {
      const auto idx = indices(plan.key, table.header);
      std::set<Row> acc;
      bool first = true;
      for (const auto& part : plan.parts) {
        const BoundPred pred = bind(part.predicate, table);
        std::set<Row> keys;
        for (const auto& row : table.rows) {
          if (pred.test(row)) keys.insert(pick(row, idx));
        }
        if (first || plan.set_op == SetOp::kUnion) {
          acc.insert(keys.begin(), keys.end());
        } else {
          std::set<Row> kept;
          for (const auto& k : acc) {
            if (keys.count(k)) kept.insert(k);
          }
          acc = std::move(kept);
        }
        first = false;
      }
      out.header = plan.key;
      out.rows.assign(acc.begin(), acc.end());
      break;
    }
    case PlanKind::kProjectKeys:
      break;
  }
  out.canonicalize();
  return out;
}

}  // namespace oqr
