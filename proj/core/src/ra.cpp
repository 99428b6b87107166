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

#include "oqr/ra.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace oqr {
namespace {

Pred junction(PredKind kind, std::vector<Pred> parts) {
  std::vector<Pred> flat;
  for (auto& p : parts) {
    if (p.kind == kind) {
      for (auto& c : p.children) flat.push_back(std::move(c));
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (flat.size() == 1) return std::move(flat.front());
  Pred out;
  out.kind = kind;
  out.children = std::move(flat);
  return out;
}

void collect_columns(const Pred& p, std::set<std::string>& out) {
  if (p.kind == PredKind::kAtom) {
    out.insert(p.column);
    return;
  }
  for (const auto& c : p.children) collect_columns(c, out);
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

Pred Pred::atom(std::string column, std::string token) {
  Pred p;
  p.kind = PredKind::kAtom;
  p.column = std::move(column);
  p.token = std::move(token);
  return p;
}

Pred Pred::all_of(std::vector<Pred> parts) { return junction(PredKind::kAnd, std::move(parts)); }
Pred Pred::any_of(std::vector<Pred> parts) { return junction(PredKind::kOr, std::move(parts)); }

Pred Pred::negate(Pred inner) {
  Pred p;
  p.kind = PredKind::kNot;
  p.children.push_back(std::move(inner));
  return p;
}

std::vector<std::string> columns_of(const Pred& pred) {
  std::set<std::string> cols;
  collect_columns(pred, cols);
  return {cols.begin(), cols.end()};
}

RaExpr RaExpr::scan(QualifiedName relation) {
  RaExpr e;
  e.kind = PlanKind::kScan;
  e.relation = std::move(relation);
  return e;
}

RaExpr RaExpr::select(QualifiedName relation, Pred predicate) {
  RaExpr e = scan(std::move(relation));
  e.kind = PlanKind::kSelect;
  e.predicate = std::move(predicate);
  return e;
}

RaExpr RaExpr::anti_membership(QualifiedName relation, std::string key, Pred violating) {
  RaExpr e = scan(std::move(relation));
  e.kind = PlanKind::kAntiMembership;
  e.key = {std::move(key)};
  e.predicate = std::move(violating);
  return e;
}

RaExpr RaExpr::key_set(SetOp op, QualifiedName relation, std::vector<std::string> key,
                       std::vector<Pred> parts) {
  RaExpr e = scan(std::move(relation));
  e.kind = PlanKind::kKeySetOp;
  e.set_op = op;
  e.key = std::move(key);
  for (auto& p : parts) e.parts.push_back({std::move(p)});
  return e;
}

RaExpr RaExpr::project_keys(RaExpr input, std::vector<std::string> key) {
  if (input.kind == PlanKind::kKeySetOp && input.key == key) return input;
  RaExpr e;
  e.kind = PlanKind::kProjectKeys;
  e.relation = input.relation;
  e.key = std::move(key);
  e.input.push_back(std::move(input));
  return e;
}

std::optional<DivisionSpec> as_division(const RaExpr& plan) {
  if (plan.kind != PlanKind::kKeySetOp || plan.set_op != SetOp::kIntersect ||
      plan.parts.size() < 2) {
    return std::nullopt;
  }
  DivisionSpec spec{plan.relation, plan.key, {}};
  for (const auto& part : plan.parts) spec.tuples.push_back(part.predicate);
  return spec;
}

std::string render_pred(const Pred& pred) {
  switch (pred.kind) {
    case PredKind::kAtom:
      return pred.column + " = '" + pred.token + "'";
    case PredKind::kNot:
      return "not(" + render_pred(pred.children.front()) + ")";
    case PredKind::kAnd:
    case PredKind::kOr: {
      std::vector<std::string> parts;
      for (const auto& c : pred.children) {
        const bool paren = c.kind == PredKind::kAnd || c.kind == PredKind::kOr;
        parts.push_back(paren ? "(" + render_pred(c) + ")" : render_pred(c));
      }
      return join(parts, pred.kind == PredKind::kAnd ? " and " : " or ");
    }
  }
  return {};
}

std::string render_ra(const RaExpr& plan) {
  const std::string& rel = plan.relation.relation;
  switch (plan.kind) {
    case PlanKind::kScan:
      return rel;
    case PlanKind::kSelect:
      return "select[" + render_pred(plan.predicate) + "](" + rel + ")";
    case PlanKind::kAntiMembership: {
      const std::string& k = plan.key.front();
      return "select[" + k + " not in project[" + k + "](select[" + render_pred(plan.predicate) +
             "](" + rel + "))](" + rel + ")";
    }
    case PlanKind::kKeySetOp: {
      const std::string keys = join(plan.key, ", ");
      std::vector<std::string> parts;
      for (const auto& part : plan.parts) {
        parts.push_back("project[" + keys + "](select[" + render_pred(part.predicate) + "](" +
                        rel + "))");
      }
      return join(parts, plan.set_op == SetOp::kIntersect ? " intersect " : " union ");
    }
    case PlanKind::kProjectKeys:
      return "project[" + join(plan.key, ", ") + "](" + render_ra(plan.input.front()) + ")";
  }
  return {};
}

}  // namespace oqr
