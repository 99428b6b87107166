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
#include <string>
#include <string_view>
#include <vector>

namespace oqr {

class Ontology;

enum class ExprKind : std::uint8_t {
  kSome,          // someValuesFrom
  kOnly,          // allValuesFrom
  kHas,           // hasValue, optionally negated
  kComplement,
  kUnion,
  kIntersection,
};

/// Operand of a restriction atom.
///   kClass   - `P some C`: one class name
///   kSet     - `P some {I1 I2}` / `P has {v1 v2}`: sorted, deduplicated names
///   kSingle  - `P has v`: one individual or literal token
enum class OperandForm : std::uint8_t { kClass, kSet, kSingle };

struct Operand {
  OperandForm form = OperandForm::kSingle;
  std::vector<std::string> names;

  bool operator==(const Operand&) const = default;
};

/// Restriction expression tree. Atoms (some/only/has) carry `property` and
/// `operand`; connectives carry `children`. Names are canonical.
///
/// Invariants maintained by the parser and by the factory helpers:
///   - union/intersection have at least two children and never directly nest
///     a node of their own kind;
///   - complement has exactly one child.
struct Expr {
  ExprKind kind = ExprKind::kHas;
  std::string property;
  Operand operand;
  bool negated = false;
  std::vector<Expr> children;

  bool operator==(const Expr&) const = default;

  bool is_atom() const {
    return kind == ExprKind::kSome || kind == ExprKind::kOnly || kind == ExprKind::kHas;
  }

  static Expr some(std::string property, Operand operand);
  static Expr only(std::string property, Operand operand);
  static Expr has(std::string property, Operand operand, bool negated = false);
  static Expr complement(Expr inner);
  /// Builds a flattened union/intersection; a single child is returned as-is.
  static Expr junction(ExprKind kind, std::vector<Expr> children);
};

using RestrictionExpr = Expr;

struct ConceptDefinition {
  std::string name;
  std::vector<Expr> assertions;

  bool operator==(const ConceptDefinition&) const = default;
};

Operand class_operand(std::string cls);
Operand set_operand(std::vector<std::string> names);
Operand single_operand(std::string token);

/// Parses one restriction expression and resolves every name against `ont`.
/// `only` is accepted only at the root.
Expr parse_expression(std::string_view text, const Ontology& ont);

/// Parses a single `concept Name { assert ...; ... }` block.
ConceptDefinition parse_concept(std::string_view text, const Ontology& ont);

/// Parses zero or more concept blocks (the store file format). `#` comments are
/// skipped; `comments_before` receives, per concept, the comment lines that
/// immediately preceded it.
std::vector<ConceptDefinition> parse_concepts(
    std::string_view text, const Ontology& ont,
    std::vector<std::vector<std::string>>* comments_before = nullptr);

std::string format_expression(const Expr& expr);
std::string format_concept(const ConceptDefinition& def);

/// Every property name used anywhere in `expr`, in first-use order.
std::vector<std::string> properties_of(const Expr& expr);

}  // namespace oqr
