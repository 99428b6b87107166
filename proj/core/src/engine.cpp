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

#include "oqr/engine.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "oqr/concept_store.hpp"
#include "oqr/error.hpp"
#include "oqr/ontology.hpp"

namespace oqr {
namespace {

Expr to_nnf(const Expr& e, bool negate) {
  switch (e.kind) {
    case ExprKind::kSome: {
      if (e.operand.form == OperandForm::kSet && e.operand.names.size() > 1) {
        std::vector<Expr> singles;
        for (const auto& name : e.operand.names) {
          singles.push_back(Expr::some(e.property, set_operand({name})));
        }
        return to_nnf(Expr::junction(ExprKind::kUnion, std::move(singles)), negate);
      }
      return negate ? Expr::complement(e) : e;
    }
    case ExprKind::kHas: {
      const bool neg = e.negated != negate;
      if (e.operand.form == OperandForm::kSet) {
        std::vector<Expr> singles;
        for (const auto& name : e.operand.names) {
          singles.push_back(Expr::has(e.property, single_operand(name), neg));
        }
        return Expr::junction(neg ? ExprKind::kIntersection : ExprKind::kUnion, std::move(singles));
      }
      return Expr::has(e.property, e.operand, neg);
    }
    case ExprKind::kOnly:
      if (negate) {
        fail(ErrorCode::kUnsupported, "complement of an 'only' restriction has no translation");
      }
      return e;
    case ExprKind::kComplement:
      return to_nnf(e.children.front(), !negate);
    case ExprKind::kUnion:
    case ExprKind::kIntersection: {
      ExprKind kind = e.kind;
      if (negate) kind = kind == ExprKind::kUnion ? ExprKind::kIntersection : ExprKind::kUnion;
      std::vector<Expr> parts;
      for (const auto& c : e.children) parts.push_back(to_nnf(c, negate));
      return Expr::junction(kind, std::move(parts));
    }
  }
  return e;
}

void reject_nested_only(const Expr& nnf) {
  for (const auto& c : nnf.children) {
    if (c.kind == ExprKind::kOnly) {
      fail(ErrorCode::kUnsupported, "'only' is supported only as the root of an assertion");
    }
    reject_nested_only(c);
  }
}

std::vector<std::string> operand_tokens(const Operand& op, const Ontology& ont) {
  if (op.form == OperandForm::kClass) return ont.extension_tokens(op.names.front());
  return op.names;
}

Pred membership(const std::string& column, const std::vector<std::string>& tokens) {
  std::vector<Pred> atoms;
  for (const auto& t : tokens) atoms.push_back(Pred::atom(column, t));
  return Pred::any_of(std::move(atoms));
}

// Row predicate of a normalized, only-free expression.
Pred to_pred(const Expr& e, const MappingRegistry& reg, const Ontology& ont) {
  switch (e.kind) {
    case ExprKind::kSome: {
      const auto& column = reg.resolve_property(ont, e.property).column;
      return membership(column, operand_tokens(e.operand, ont));
    }
    case ExprKind::kHas: {
      const auto& column = reg.resolve_property(ont, e.property).column;
      Pred atom = Pred::atom(column, e.operand.names.front());
      return e.negated ? Pred::negate(std::move(atom)) : atom;
    }
    case ExprKind::kComplement:
      return Pred::negate(to_pred(e.children.front(), reg, ont));
    case ExprKind::kUnion:
    case ExprKind::kIntersection: {
      std::vector<Pred> parts;
      for (const auto& c : e.children) parts.push_back(to_pred(c, reg, ont));
      return e.kind == ExprKind::kUnion ? Pred::any_of(std::move(parts))
                                        : Pred::all_of(std::move(parts));
    }
    case ExprKind::kOnly:
      break;
  }
  fail(ErrorCode::kUnsupported, "'only' is supported only as the root of an assertion");
}

const std::string& entity_key(const RelationMeta& rel, std::vector<std::string>* warnings) {
  if (rel.primary_key.size() > 1 && warnings) {
    warnings->push_back("relation " + rel.name.str() +
                        " has a composite primary key; anti-membership uses its first column " +
                        rel.primary_key.front());
  }
  return rel.primary_key.front();
}

}  // namespace

Expr normalize(const Expr& expr) { return to_nnf(expr, false); }

RaExpr translate_assertion(const Expr& expr, const MappingRegistry& reg, const Ontology& ont,
                           std::vector<std::string>* warnings) {
  const Expr nnf = normalize(expr);
  reject_nested_only(nnf);
  const RelationMeta& rel = reg.relation_of(ont, nnf);
  if (nnf.kind == ExprKind::kOnly) {
    const auto& column = reg.resolve_property(ont, nnf.property).column;
    Pred violating = Pred::negate(membership(column, operand_tokens(nnf.operand, ont)));
    return RaExpr::anti_membership(rel.name, entity_key(rel, warnings), std::move(violating));
  }
  return RaExpr::select(rel.name, to_pred(nnf, reg, ont));
}

std::vector<std::string> assertion_columns(const Expr& expr, const MappingRegistry& reg,
                                           const Ontology& ont) {
  std::set<std::string> cols;
  for (const auto& p : properties_of(expr)) cols.insert(reg.resolve_property(ont, p).column);
  return {cols.begin(), cols.end()};
}

RaExpr plan_concept(const ConceptDefinition& def, const MappingRegistry& reg, const Ontology& ont,
                    std::vector<std::string>* warnings) {
  if (def.assertions.empty()) {
    fail(ErrorCode::kEmptyConcept, "concept " + def.name + " has no assertions");
  }
  if (def.assertions.size() == 1) {
    return translate_assertion(def.assertions.front(), reg, ont, warnings);
  }
  const RelationMeta& rel = reg.relation_of(ont, def.assertions);

  std::vector<Pred> preds;
  std::vector<std::vector<std::string>> column_sets;
  for (const auto& assertion : def.assertions) {
    const Expr nnf = normalize(assertion);
    reject_nested_only(nnf);
    if (nnf.kind == ExprKind::kOnly) {
      fail(ErrorCode::kMixedOnlyAssertion,
           "concept " + def.name + ": an 'only' assertion cannot be combined with other assertions");
    }
    preds.push_back(to_pred(nnf, reg, ont));
    column_sets.push_back(assertion_columns(nnf, reg, ont));
  }

  bool disjoint = true;
  std::set<std::string> seen;
  for (const auto& cols : column_sets) {
    for (const auto& c : cols) disjoint = seen.insert(c).second && disjoint;
  }
  if (disjoint) return RaExpr::select(rel.name, Pred::all_of(std::move(preds)));
  return RaExpr::key_set(SetOp::kIntersect, rel.name, rel.primary_key, std::move(preds));
}

RaExpr translate_term(std::string_view term, const ConceptStore& store, const MappingRegistry& reg,
                      const Ontology& ont, std::vector<std::string>* warnings) {
  return plan_concept(store.lookup(term), reg, ont, warnings);
}

}  // namespace oqr
