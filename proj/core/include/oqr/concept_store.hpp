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

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oqr/dl_expr.hpp"

namespace oqr {

class MappingRegistry;
class Ontology;

struct StoredConcept {
  ConceptDefinition definition;
  std::string created;   // ISO-8601 UTC
  std::string modified;  // ISO-8601 UTC
};

/// Named concept definitions persisted as a DLQ text file. Each block is
/// preceded by a `# oqr: created=... modified=...` line. Not thread-safe;
/// callers serialize writers.
class ConceptStore {
 public:
  using Clock = std::function<std::string()>;

  /// In-memory store; nothing is written.
  ConceptStore();

  /// Loads `path` if it exists. Later mutations rewrite the file atomically.
  static ConceptStore open(const std::filesystem::path& path, const Ontology& ont);

  /// Parses a store document without binding it to a file.
  static ConceptStore parse(std::string_view text, const Ontology& ont);

  /// Exact canonical-name match. Throws UnknownConcept carrying every stored
  /// name within edit distance 2 as suggestions.
  const ConceptDefinition& lookup(std::string_view term) const;
  const StoredConcept* find(std::string_view name) const;

  std::vector<std::string> list() const;
  const std::map<std::string, StoredConcept>& concepts() const { return concepts_; }

  /// Checks `def` against the ontology and mappings by planning it, then
  /// persists it. Throws ValidationFailed, Conflict (exists and !overwrite) or
  /// StorageError. Returns true when an existing concept was replaced.
  bool save(ConceptDefinition def, const Ontology& ont, const MappingRegistry& reg,
            bool overwrite = true);

  /// Parses one `concept NAME { ... }` block and saves it. Parse errors are
  /// reported as ValidationFailed with the parser's position.
  bool save_text(std::string_view text, const Ontology& ont, const MappingRegistry& reg,
                 bool overwrite = true);

  /// Throws UnknownConcept when absent.
  void remove(std::string_view name);

  /// Store file contents; parse(serialize()) reproduces this store.
  std::string serialize() const;

  const std::optional<std::filesystem::path>& path() const { return path_; }
  void set_clock(Clock clock) { clock_ = std::move(clock); }

 private:
  void commit(std::map<std::string, StoredConcept> next);

  std::map<std::string, StoredConcept> concepts_;
  std::optional<std::filesystem::path> path_;
  Clock clock_;
};

/// Current time as `YYYY-MM-DDTHH:MM:SSZ`.
std::string utc_timestamp();

}  // namespace oqr
