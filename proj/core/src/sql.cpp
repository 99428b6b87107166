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

#include <string>
#include <vector>

#include "oqr/backend.hpp"

namespace oqr {
namespace {

std::string quote(const std::string& token) {
  std::string out = "'";
  for (char c : token) {
    if (c == '\'') out.push_back('\'');
    out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

std::string sql_pred(const Pred& p) {
  switch (p.kind) {
    case PredKind::kAtom:
      return p.column + " = " + quote(p.token);
    case PredKind::kNot: {
      const Pred& inner = p.children.front();
      if (inner.kind == PredKind::kAtom) return inner.column + " <> " + quote(inner.token);
      return "NOT (" + sql_pred(inner) + ")";
    }
    case PredKind::kAnd:
    case PredKind::kOr: {
      std::string out;
      for (const auto& c : p.children) {
        if (!out.empty()) out += p.kind == PredKind::kAnd ? " AND " : " OR ";
        const bool paren = c.kind == PredKind::kAnd || c.kind == PredKind::kOr;
        out += paren ? "(" + sql_pred(c) + ")" : sql_pred(c);
      }
      return out;
    }
  }
  return {};
}

std::string column_list(const std::vector<std::string>& cols) {
  std::string out;
  for (const auto& c : cols) out += (out.empty() ? "" : ", ") + c;
  return out;
}

std::string emit(const RaExpr& plan, const std::string& select_list) {
  const std::string& rel = plan.relation.relation;
  switch (plan.kind) {
    case PlanKind::kScan:
      return "SELECT " + select_list + " FROM " + rel;
    case PlanKind::kSelect:
      return "SELECT " + select_list + " FROM " + rel + " WHERE " + sql_pred(plan.predicate);
    case PlanKind::kAntiMembership: {
      const std::string& k = plan.key.front();
      return "SELECT " + select_list + " FROM " + rel + " WHERE " + k + " NOT IN (SELECT " + k +
             " FROM " + rel + " WHERE " + sql_pred(plan.predicate) + ")";
    }
    case PlanKind::kKeySetOp: {
      const std::string keys = column_list(plan.key);
      std::string out;
      for (const auto& part : plan.parts) {
        if (!out.empty()) out += plan.set_op == SetOp::kIntersect ? " INTERSECT " : " UNION ";
        out += "SELECT " + keys + " FROM " + rel + " WHERE " + sql_pred(part.predicate);
      }
      return out;
    }
    case PlanKind::kProjectKeys: {
      const RaExpr& input = plan.input.front();
      if (input.yields_keys()) {
        return "SELECT " + column_list(plan.key) + " FROM (" + emit(input, "*") + ") AS k";
      }
      return emit(input, column_list(plan.key));
    }
  }
  return {};
}

}  // namespace

std::string emit_sql(const RaExpr& plan) { return emit(plan, "*"); }

}  // namespace oqr
