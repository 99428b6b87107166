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
#include <optional>
#include <string>
#include <vector>

#include "oqr/mapping.hpp"

namespace oqr {

enum class PredKind : std::uint8_t { kAtom, kAnd, kOr, kNot };

/// Boolean row predicate over `column = 'token'` atoms. And/Or nodes have at
/// least two children and are kept flat.
struct Pred {
  PredKind kind = PredKind::kAtom;
  std::string column;
  std::string token;
  std::vector<Pred> children;

  bool operator==(const Pred&) const = default;

  static Pred atom(std::string column, std::string token);
  static Pred all_of(std::vector<Pred> parts);
  static Pred any_of(std::vector<Pred> parts);
  static Pred negate(Pred inner);
};

/// Every column a predicate mentions, sorted and unique.
std::vector<std::string> columns_of(const Pred& pred);

enum class PlanKind : std::uint8_t {
  kScan,            // R
  kSelect,          // sigma_pred(R)
  kAntiMembership,  // sigma_{key NOT IN pi_key(sigma_violating(R))}(R)
  kKeySetOp,        // pi_key(sigma_p1(R)) INTERSECT|UNION ... pi_key(sigma_pn(R))
  kProjectKeys,     // pi_key(input)
};

enum class SetOp : std::uint8_t { kIntersect, kUnion };

struct KeySelection {
  Pred predicate;
  bool operator==(const KeySelection&) const = default;
};

/// Relational-algebra plan over a single base relation.
///   kScan           relation
///   kSelect         relation, predicate
///   kAntiMembership relation, key (one column), predicate = violating rows
///   kKeySetOp       relation, key, set_op, parts (>= 2)
///   kProjectKeys    key, input (one element)
struct RaExpr {
  PlanKind kind = PlanKind::kScan;
  QualifiedName relation;
  std::vector<std::string> key;
  Pred predicate;
  SetOp set_op = SetOp::kIntersect;
  std::vector<KeySelection> parts;
  std::vector<RaExpr> input;

  bool operator==(const RaExpr&) const = default;

  static RaExpr scan(QualifiedName relation);
  static RaExpr select(QualifiedName relation, Pred predicate);
  static RaExpr anti_membership(QualifiedName relation, std::string key, Pred violating);
  static RaExpr key_set(SetOp op, QualifiedName relation, std::vector<std::string> key,
                        std::vector<Pred> parts);
  static RaExpr project_keys(RaExpr input, std::vector<std::string> key);

  /// True when the plan yields entity keys rather than full rows.
  bool yields_keys() const { return kind == PlanKind::kKeySetOp || kind == PlanKind::kProjectKeys; }
};

/// Division R / S viewed through its realization: S has one tuple pattern per
/// part of an intersecting key-set plan.
struct DivisionSpec {
  QualifiedName relation;
  std::vector<std::string> key;
  std::vector<Pred> tuples;
};

std::optional<DivisionSpec> as_division(const RaExpr& plan);

/// Algebraic text rendering, e.g.
/// `select[clinical_test_name = 'HEADACHES'](patient_information)`.
std::string render_ra(const RaExpr& plan);
std::string render_pred(const Pred& pred);

}  // namespace oqr
