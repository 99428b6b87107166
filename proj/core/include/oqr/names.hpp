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
#include <string>
#include <string_view>

namespace oqr {

/// Canonical form of an ontology name or data token: surrounding whitespace
/// trimmed, ASCII letters upper-cased, internal hyphens and whitespace runs
/// mapped to a single underscore. A leading '-' is kept so negative numbers
/// survive. `Orthopaedic-Sequelea` and `orthopaedic_sequelea` both become
/// `ORTHOPAEDIC_SEQUELEA`.
std::string canonical_name(std::string_view raw);

/// True for `[A-Za-z_][A-Za-z0-9_-]*`.
bool is_identifier(std::string_view text);

/// True for an optionally signed decimal integer or fraction.
bool is_number(std::string_view text);

/// Literal tokens are TRUE, FALSE and numbers; everything else must name an
/// individual. Expects canonical input.
bool is_literal_token(std::string_view canonical);

/// Levenshtein distance, used for concept-name suggestions.
std::size_t edit_distance(std::string_view a, std::string_view b);

}  // namespace oqr
