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

#include "oqr/service.hpp"

#include <fstream>
#include <mutex>
#include <sstream>
#include <utility>

#include "oqr/backend.hpp"
#include "oqr/engine.hpp"
#include "oqr/names.hpp"
#include "oqr/oracle.hpp"

namespace oqr {
namespace {

using nlohmann::json;

ApiResponse ok(json body, int status = 200) { return {status, std::move(body)}; }

ApiResponse not_found(const std::string& what) {
  return {404, {{"error", {{"code", "NotFound"}, {"message", what}}}}};
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= path.size()) {
    std::size_t slash = path.find('/', start);
    if (slash == std::string::npos) slash = path.size();
    if (slash > start) parts.push_back(path.substr(start, slash - start));
    start = slash + 1;
  }
  return parts;
}

QueryInput query_from_json(const json& body) {
  if (!body.is_object()) fail(ErrorCode::kValidationFailed, "request body must be a JSON object");
  QueryInput in;
  if (body.contains("expr") && !body["expr"].is_null()) {
    in.expr = body["expr"].get<std::string>();
  }
  if (body.contains("concept") && !body["concept"].is_null()) {
    in.concept_name = body["concept"].get<std::string>();
  }
  if (body.contains("keysOnly")) in.keys_only = body["keysOnly"].get<bool>();
  return in;
}

json parse_body(const std::string& body) {
  try {
    return body.empty() ? json::object() : json::parse(body);
  } catch (const json::exception& e) {
    fail(ErrorCode::kSyntaxError, std::string("invalid JSON body: ") + e.what());
  }
}

void check_input(const QueryInput& in) {
  if (in.expr.has_value() == in.concept_name.has_value()) {
    fail(ErrorCode::kValidationFailed, "give exactly one of 'expr' and 'concept'");
  }
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kStorageError, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownConcept:
      return 404;
    case ErrorCode::kConflict:
      return 409;
    case ErrorCode::kStorageError:
      return 500;
    default:
      return 400;
  }
}

json error_json(const Error& e) {
  json err = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
  if (e.position) err["position"] = *e.position;
  if (e.line) err["line"] = *e.line;
  err["suggestions"] = e.suggestions;
  return {{"error", err}};
}

json rowset_json(const RowSet& rows) {
  json out = {{"columns", rows.header}, {"rows", json::array()}};
  for (const auto& r : rows.rows) {
    json row = json::array();
    for (const auto& cell : r) row.push_back(cell ? json(*cell) : json(nullptr));
    out["rows"].push_back(std::move(row));
  }
  return out;
}

json translation_json(const TranslationResponse& t) {
  return {{"dl_text", t.dl_text}, {"ra_text", t.ra_text}, {"sql", t.sql}, {"warnings", t.warnings}};
}

Service::Service(Ontology ont, MappingRegistry reg, std::optional<Database> db, ConceptStore store,
                 std::vector<std::string> load_warnings)
    : ont_(std::move(ont)),
      reg_(std::move(reg)),
      db_(std::move(db)),
      load_warnings_(std::move(load_warnings)),
      store_(std::move(store)) {}

std::unique_ptr<Service> Service::load(const ServiceConfig& config) {
  std::vector<std::string> warnings;
  Ontology ont = Ontology::load(read_text_file(config.ontology), &warnings);
  MappingRegistry reg = MappingRegistry::load(read_text_file(config.mappings), ont);
  std::optional<Database> db;
  if (config.data) db = Database::load_csv(*config.data, reg, &warnings);
  ConceptStore store = config.store ? ConceptStore::open(*config.store, ont) : ConceptStore();
  return std::make_unique<Service>(std::move(ont), std::move(reg), std::move(db), std::move(store),
                                   std::move(warnings));
}

ConceptDefinition Service::resolve_concept(const std::string& name) const {
  std::shared_lock lock(store_mutex_);
  return store_.lookup(name);
}

TranslationResponse Service::translate(const QueryInput& in) const {
  check_input(in);
  TranslationResponse out;
  if (in.expr) {
    const Expr e = parse_expression(*in.expr, ont_);
    out.dl_text = format_expression(e);
    out.plan = translate_assertion(e, reg_, ont_, &out.warnings);
  } else {
    const ConceptDefinition def = resolve_concept(*in.concept_name);
    out.dl_text = format_concept(def);
    out.plan = plan_concept(def, reg_, ont_, &out.warnings);
  }
  if (in.keys_only && !out.plan.yields_keys()) {
    out.plan = RaExpr::project_keys(out.plan, reg_.relation(out.plan.relation).primary_key);
  }
  out.ra_text = render_ra(out.plan);
  out.sql = emit_sql(out.plan);
  return out;
}

ExecutionResult Service::execute(const QueryInput& in) const {
  if (!db_) fail(ErrorCode::kValidationFailed, "no data directory was configured");
  ExecutionResult out;
  out.translation = translate(in);
  out.result = eval_ra(out.translation.plan, *db_);
  out.keys = out.translation.plan.yields_keys();
  return out;
}

RowSet Service::oracle(const QueryInput& in) const {
  check_input(in);
  if (!db_) fail(ErrorCode::kValidationFailed, "no data directory was configured");
  if (in.concept_name) return oracle_keys(resolve_concept(*in.concept_name), *db_, reg_, ont_);
  const Expr e = parse_expression(*in.expr, ont_);
  RowSet rows = oracle_rows(e, *db_, reg_, ont_);
  if (in.keys_only) rows = project_rows(rows, reg_.relation_of(ont_, e).primary_key);
  return rows;
}

std::vector<std::string> Service::list_concepts() const {
  std::shared_lock lock(store_mutex_);
  return store_.list();
}

StoredConcept Service::show_concept(const std::string& name) const {
  std::shared_lock lock(store_mutex_);
  (void)store_.lookup(name);
  return *store_.find(name);
}

bool Service::save_concept(const std::string& text, bool overwrite) {
  std::unique_lock lock(store_mutex_);
  return store_.save_text(text, ont_, reg_, overwrite);
}

void Service::delete_concept(const std::string& name) {
  std::unique_lock lock(store_mutex_);
  store_.remove(name);
}

ApiResponse Service::handle(const std::string& method, const std::string& path,
                            const std::map<std::string, std::string>& query,
                            const std::string& body) {
  try {
    auto parts = split_path(path);
    if (parts.empty() || parts[0] != "api") return not_found("no route for " + path);
    parts.erase(parts.begin());
    return route(method, parts, query, body);
  } catch (const Error& e) {
    return {http_status(e.code()), error_json(e)};
  } catch (const json::exception& e) {
    return {400, {{"error", {{"code", "ValidationFailed"}, {"message", e.what()}}}}};
  } catch (const std::exception& e) {
    return {500, {{"error", {{"code", "Internal"}, {"message", e.what()}}}}};
  }
}

ApiResponse Service::route(const std::string& method, const std::vector<std::string>& parts,
                           const std::map<std::string, std::string>& query,
                           const std::string& body) {
  const std::size_t n = parts.size();
  const std::string head = n ? parts[0] : "";

  if (method == "GET" && n == 1 && head == "health") {
    return ok({{"status", "ok"}, {"concepts", list_concepts().size()}, {"data", db_.has_value()}});
  }

  if (method == "GET" && head == "classes") {
    if (n == 1) {
      std::optional<std::string> parent;
      if (auto it = query.find("parent"); it != query.end() && !it->second.empty()) {
        parent = canonical_name(it->second);
        if (!ont_.find_class(*parent)) return not_found("unknown class " + *parent);
      }
      json classes = json::array();
      for (const auto& name : ont_.subclasses(parent)) {
        const ClassDecl& decl = *ont_.find_class(name);
        classes.push_back({{"name", name},
                           {"display", decl.display},
                           {"hasSubclasses", !ont_.subclasses(name).empty()},
                           {"instances", ont_.instances_of(name, false)}});
      }
      return ok({{"parent", parent ? json(*parent) : json(nullptr)}, {"classes", classes}});
    }
    if (n == 3 && parts[2] == "properties") {
      const std::string cls = canonical_name(parts[1]);
      if (!ont_.find_class(cls)) return not_found("unknown class " + cls);
      json props = json::array();
      for (const auto& name : ont_.applicable_properties(cls)) {
        const PropertyDecl& decl = *ont_.find_property(name);
        props.push_back({{"name", name},
                         {"display", decl.display},
                         {"range", decl.range ? json(*decl.range) : json(nullptr)}});
      }
      return ok({{"class", cls}, {"properties", props}});
    }
  }

  if (method == "GET" && n == 3 && head == "properties" && parts[2] == "values") {
    const std::string prop = canonical_name(parts[1]);
    if (!ont_.find_property(prop)) return not_found("unknown property " + prop);
    return ok({{"property", prop}, {"values", ont_.range_values(prop)}});
  }

  if (method == "POST" && n == 1 && head == "translate") {
    return ok(translation_json(translate(query_from_json(parse_body(body)))));
  }

  if (method == "POST" && n == 1 && head == "execute") {
    const ExecutionResult r = execute(query_from_json(parse_body(body)));
    json out = translation_json(r.translation);
    out["kind"] = r.keys ? "keys" : "rows";
    out["result"] = rowset_json(r.result);
    return ok(out);
  }

  if (head == "concepts") {
    if (method == "GET" && n == 1) {
      json list = json::array();
      std::shared_lock lock(store_mutex_);
      for (const auto& [name, sc] : store_.concepts()) {
        list.push_back({{"name", name}, {"created", sc.created}, {"modified", sc.modified}});
      }
      return ok({{"concepts", list}});
    }
    if (method == "GET" && n == 2) {
      const StoredConcept sc = show_concept(parts[1]);
      return ok({{"name", sc.definition.name},
                 {"text", format_concept(sc.definition)},
                 {"created", sc.created},
                 {"modified", sc.modified}});
    }
    if (method == "POST" && n == 1) {
      const json req = parse_body(body);
      if (!req.is_object()) fail(ErrorCode::kValidationFailed, "request body must be a JSON object");
      std::string text;
      if (req.contains("text")) {
        text = req["text"].get<std::string>();
      } else {
        if (!req.contains("name") || !req.contains("assertions")) {
          fail(ErrorCode::kValidationFailed, "give 'text', or 'name' and 'assertions'");
        }
        text = "concept " + req["name"].get<std::string>() + " {\n";
        for (const auto& a : req["assertions"]) text += "  assert " + a.get<std::string>() + ";\n";
        text += "}\n";
      }
      const bool overwrite = req.value("overwrite", false);
      const bool replaced = save_concept(text, overwrite);
      const ConceptDefinition def = resolve_concept(parse_concept(text, ont_).name);
      return ok({{"name", def.name}, {"replaced", replaced}, {"text", format_concept(def)}},
                replaced ? 200 : 201);
    }
    if (method == "DELETE" && n == 2) {
      delete_concept(parts[1]);
      return ok({{"deleted", canonical_name(parts[1])}});
    }
  }

  std::string path = "/api";
  for (const auto& p : parts) path += "/" + p;
  return not_found("no route for " + method + " " + path);
}

}  // namespace oqr
