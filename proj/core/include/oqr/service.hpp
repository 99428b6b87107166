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
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oqr/concept_store.hpp"
#include "oqr/database.hpp"
#include "oqr/error.hpp"
#include "oqr/mapping.hpp"
#include "oqr/ontology.hpp"
#include "oqr/ra.hpp"

namespace oqr {

struct ServiceConfig {
  std::filesystem::path ontology;
  std::filesystem::path mappings;
  std::optional<std::filesystem::path> data;
  std::optional<std::filesystem::path> store;
  std::optional<std::filesystem::path> assets;
};

/// Exactly one of `expr` and `concept_name` is set.
struct QueryInput {
  std::optional<std::string> expr;
  std::optional<std::string> concept_name;
  bool keys_only = false;
};

struct TranslationResponse {
  std::string dl_text;
  std::string ra_text;
  std::string sql;
  std::vector<std::string> warnings;
  RaExpr plan;
};

struct ExecutionResult {
  TranslationResponse translation;
  RowSet result;
  bool keys = false;
};

/// HTTP-shaped result of `Service::handle`.
struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

/// Shared by the CLI and the HTTP server. Ontology, mappings and data are
/// immutable after construction; the concept store is guarded by a
/// reader/writer lock.
class Service {
 public:
  Service(Ontology ont, MappingRegistry reg, std::optional<Database> db, ConceptStore store,
          std::vector<std::string> load_warnings = {});

  /// Reads every configured file. Data and store are optional.
  static std::unique_ptr<Service> load(const ServiceConfig& config);

  const Ontology& ontology() const { return ont_; }
  const MappingRegistry& mappings() const { return reg_; }
  const std::optional<Database>& database() const { return db_; }
  const std::vector<std::string>& load_warnings() const { return load_warnings_; }

  TranslationResponse translate(const QueryInput& in) const;
  ExecutionResult execute(const QueryInput& in) const;
  /// Brute-force answer: rows for an expression, keys for a concept.
  RowSet oracle(const QueryInput& in) const;

  std::vector<std::string> list_concepts() const;
  StoredConcept show_concept(const std::string& name) const;
  bool save_concept(const std::string& text, bool overwrite);
  void delete_concept(const std::string& name);

  /// Dispatches one /api request. `path` excludes the query string.
  ApiResponse handle(const std::string& method, const std::string& path,
                     const std::map<std::string, std::string>& query,
                     const std::string& body);

 private:
  ConceptDefinition resolve_concept(const std::string& name) const;
  ApiResponse route(const std::string& method, const std::vector<std::string>& parts,
                    const std::map<std::string, std::string>& query, const std::string& body);

  Ontology ont_;
  MappingRegistry reg_;
  std::optional<Database> db_;
  std::vector<std::string> load_warnings_;

  mutable std::shared_mutex store_mutex_;
  ConceptStore store_;
};

/// HTTP status for an error code.
int http_status(ErrorCode code);

nlohmann::json error_json(const Error& e);
nlohmann::json rowset_json(const RowSet& rows);
nlohmann::json translation_json(const TranslationResponse& t);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace oqr
