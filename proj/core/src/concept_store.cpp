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

#include "oqr/concept_store.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>
#include <utility>

#include "oqr/engine.hpp"
#include "oqr/error.hpp"
#include "oqr/mapping.hpp"
#include "oqr/names.hpp"
#include "oqr/ontology.hpp"

namespace oqr {
namespace {

constexpr std::string_view kMetaPrefix = "# oqr:";

// Reads `created=` and `modified=` from a metadata comment.
void read_meta(const std::string& comment, StoredConcept& out) {
  if (comment.rfind(kMetaPrefix, 0) != 0) return;
  std::istringstream in(comment.substr(kMetaPrefix.size()));
  std::string field;
  while (in >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = field.substr(0, eq);
    if (key == "created") out.created = field.substr(eq + 1);
    if (key == "modified") out.modified = field.substr(eq + 1);
  }
}

Error rewrap(const Error& e, ErrorCode code, const std::string& prefix) {
  Error out(code, prefix + e.what());
  out.line = e.line;
  out.position = e.position;
  out.suggestions = e.suggestions;
  return out;
}

}  // namespace

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ConceptStore::ConceptStore() : clock_(utc_timestamp) {}

ConceptStore ConceptStore::parse(std::string_view text, const Ontology& ont) {
  ConceptStore store;
  std::vector<std::vector<std::string>> comments;
  auto defs = parse_concepts(text, ont, &comments);
  for (std::size_t i = 0; i < defs.size(); ++i) {
    StoredConcept sc;
    for (const auto& c : comments[i]) read_meta(c, sc);
    std::string name = defs[i].name;
    sc.definition = std::move(defs[i]);
    if (!store.concepts_.emplace(name, std::move(sc)).second) {
      fail(ErrorCode::kStorageError, "concept " + name + " is defined twice in the store");
    }
  }
  return store;
}

ConceptStore ConceptStore::open(const std::filesystem::path& path, const Ontology& ont) {
  ConceptStore store;
  std::error_code ec;
  if (std::filesystem::exists(path, ec)) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::kStorageError, "cannot read store " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      store = parse(buf.str(), ont);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kStorageError) throw;
      throw rewrap(e, ErrorCode::kStorageError, path.string() + ": ");
    }
  }
  store.path_ = path;
  return store;
}

const StoredConcept* ConceptStore::find(std::string_view name) const {
  auto it = concepts_.find(canonical_name(name));
  return it == concepts_.end() ? nullptr : &it->second;
}

const ConceptDefinition& ConceptStore::lookup(std::string_view term) const {
  const std::string key = canonical_name(term);
  if (const StoredConcept* sc = find(key)) return sc->definition;

  std::vector<std::pair<std::size_t, std::string>> near;
  for (const auto& [name, sc] : concepts_) {
    const std::size_t d = edit_distance(key, name);
    if (d <= 2) near.emplace_back(d, name);
  }
  std::sort(near.begin(), near.end());
  Error err(ErrorCode::kUnknownConcept, "unknown concept " + key);
  for (auto& [d, name] : near) err.suggestions.push_back(std::move(name));
  throw err;
}

std::vector<std::string> ConceptStore::list() const {
  std::vector<std::string> names;
  for (const auto& [name, sc] : concepts_) names.push_back(name);
  return names;
}

bool ConceptStore::save(ConceptDefinition def, const Ontology& ont, const MappingRegistry& reg,
                        bool overwrite) {
  def.name = canonical_name(def.name);
  if (!is_identifier(def.name)) {
    fail(ErrorCode::kValidationFailed, "invalid concept name '" + def.name + "'");
  }
  try {
    (void)plan_concept(def, reg, ont);
  } catch (const Error& e) {
    throw rewrap(e, ErrorCode::kValidationFailed, "concept " + def.name + ": ");
  }

  auto next = concepts_;
  auto it = next.find(def.name);
  const bool existed = it != next.end();
  if (existed && !overwrite) {
    fail(ErrorCode::kConflict, "concept " + def.name + " already exists");
  }
  const std::string now = clock_();
  if (existed) {
    it->second.definition = std::move(def);
    it->second.modified = now;
  } else {
    std::string name = def.name;
    next.emplace(std::move(name), StoredConcept{std::move(def), now, now});
  }
  commit(std::move(next));
  return existed;
}

bool ConceptStore::save_text(std::string_view text, const Ontology& ont,
                             const MappingRegistry& reg, bool overwrite) {
  ConceptDefinition def;
  try {
    def = parse_concept(text, ont);
  } catch (const Error& e) {
    throw rewrap(e, ErrorCode::kValidationFailed, "");
  }
  return save(std::move(def), ont, reg, overwrite);
}

void ConceptStore::remove(std::string_view name) {
  const std::string key = canonical_name(name);
  if (!concepts_.count(key)) {
    (void)lookup(key);  // throws with suggestions
  }
  auto next = concepts_;
  next.erase(key);
  commit(std::move(next));
}

std::string ConceptStore::serialize() const {
  std::string out;
  for (const auto& [name, sc] : concepts_) {
    if (!out.empty()) out += '\n';
    out += std::string(kMetaPrefix) + " created=" + sc.created + " modified=" + sc.modified + "\n";
    out += format_concept(sc.definition);
  }
  return out;
}

void ConceptStore::commit(std::map<std::string, StoredConcept> next) {
  std::swap(concepts_, next);
  if (!path_) return;
  const auto tmp = path_->string() + ".tmp." + std::to_string(::getpid());
  try {
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) fail(ErrorCode::kStorageError, "cannot write " + tmp);
      out << serialize();
      out.flush();
      if (!out) fail(ErrorCode::kStorageError, "short write to " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, *path_, ec);
    if (ec) {
      std::filesystem::remove(tmp, ec);
      fail(ErrorCode::kStorageError, "cannot replace " + path_->string());
    }
  } catch (...) {
    std::swap(concepts_, next);
    throw;
  }
}

}  // namespace oqr
