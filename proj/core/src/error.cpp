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

#include "oqr/error.hpp"

#include <utility>

namespace oqr {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kUnknownReference: return "UnknownReference";
    case ErrorCode::kCycleDetected: return "CycleDetected";
    case ErrorCode::kDisjointnessViolation: return "DisjointnessViolation";
    case ErrorCode::kInverseAsymmetry: return "InverseAsymmetry";
    case ErrorCode::kDomainRangeViolation: return "DomainRangeViolation";
    case ErrorCode::kConflictingDeclaration: return "ConflictingDeclaration";
    case ErrorCode::kUnsupported: return "Unsupported";
    case ErrorCode::kKindMismatch: return "KindMismatch";
    case ErrorCode::kEmptyConcept: return "EmptyConcept";
    case ErrorCode::kDuplicateBinding: return "DuplicateBinding";
    case ErrorCode::kUnmappedProperty: return "UnmappedProperty";
    case ErrorCode::kCrossRelationExpression: return "CrossRelationExpression";
    case ErrorCode::kMixedOnlyAssertion: return "MixedOnlyAssertion";
    case ErrorCode::kUnknownConcept: return "UnknownConcept";
    case ErrorCode::kValidationFailed: return "ValidationFailed";
    case ErrorCode::kConflict: return "Conflict";
    case ErrorCode::kStorageError: return "StorageError";
    case ErrorCode::kMissingRelation: return "MissingRelation";
    case ErrorCode::kMissingColumn: return "MissingColumn";
    case ErrorCode::kHeaderMismatch: return "HeaderMismatch";
    case ErrorCode::kArityError: return "ArityError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string message)
    : std::runtime_error(std::move(message)), code_(code) {}

void fail(ErrorCode code, std::string message) {
  throw Error(code, std::move(message));
}

}  // namespace oqr
