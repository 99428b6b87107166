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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace oqr {

/// Machine-readable error taxonomy shared by every module. The names are part
/// of the JSON wire format (see `to_string`).
enum class ErrorCode {
  kSyntaxError,
  kUnknownReference,
  kCycleDetected,
  kDisjointnessViolation,
  kInverseAsymmetry,
  kDomainRangeViolation,
  kConflictingDeclaration,
  kUnsupported,
  kKindMismatch,
  kEmptyConcept,
  kDuplicateBinding,
  kUnmappedProperty,
  kCrossRelationExpression,
  kMixedOnlyAssertion,
  kUnknownConcept,
  kValidationFailed,
  kConflict,
  kStorageError,
  kMissingRelation,
  kMissingColumn,
  kHeaderMismatch,
  kArityError,
};

std::string_view to_string(ErrorCode code);

/// Base exception for all user-facing failures. `line` is 1-based and refers
/// to line-oriented inputs (ODF, OMF, CSV); `position` is a 0-based byte
/// offset into single-line inputs (DLQ expressions).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message);

  ErrorCode code() const noexcept { return code_; }

  std::optional<std::size_t> line;
  std::optional<std::size_t> position;
  std::vector<std::string> suggestions;

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, std::string message);

}  // namespace oqr
