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

// oqr: command line front end for ontology-assisted query reformulation.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "oqr/concept_store.hpp"
#include "oqr/engine.hpp"
#include "oqr/error.hpp"
#include "oqr/fuzz.hpp"
#include "oqr/http.hpp"
#include "oqr/names.hpp"
#include "oqr/service.hpp"

namespace {

constexpr int kUserError = 1;
constexpr int kInternalError = 2;
constexpr int kDivergence = 3;

struct Options {
  std::string ontology;
  std::string mappings;
  std::string data;
  std::string store;
  std::string assets;
  std::string expr;
  std::string concept_name;
  std::string emit = "sql";
  bool keys_only = false;
  bool overwrite = false;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::uint64_t seed = 7;
  std::size_t cases = 1000;
  std::string file;
  std::string name;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string(flag) + " is required");
}

std::unique_ptr<oqr::Service> load_service(const Options& o, bool need_data, bool need_store) {
  require(o.ontology, "--ontology");
  require(o.mappings, "--mappings");
  if (need_data) require(o.data, "--data");
  if (need_store) require(o.store, "--store (or OQR_STORE)");
  oqr::ServiceConfig c;
  c.ontology = o.ontology;
  c.mappings = o.mappings;
  if (!o.data.empty()) c.data = o.data;
  if (!o.store.empty()) c.store = o.store;
  if (!o.assets.empty()) c.assets = o.assets;
  return oqr::Service::load(c);
}

oqr::QueryInput input_of(const Options& o) {
  if (o.expr.empty() == o.concept_name.empty()) {
    throw UsageError("give exactly one of --expr and --concept");
  }
  oqr::QueryInput in;
  if (!o.expr.empty()) in.expr = o.expr;
  if (!o.concept_name.empty()) in.concept_name = o.concept_name;
  in.keys_only = o.keys_only;
  return in;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

void print_rows(const oqr::RowSet& rows) {
  for (std::size_t i = 0; i < rows.header.size(); ++i) {
    std::cout << (i ? "," : "") << rows.header[i];
  }
  std::cout << '\n';
  for (const auto& r : rows.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) std::cout << (i ? "," : "") << oqr::cell_text(r[i]);
    std::cout << '\n';
  }
}

void report(const oqr::Error& e, const Options& o) {
  std::cerr << "error: " << oqr::to_string(e.code()) << ": " << e.what() << '\n';
  if (e.position && !o.expr.empty() && *e.position <= o.expr.size()) {
    std::cerr << "  " << o.expr << "\n  " << std::string(*e.position, ' ') << "^\n";
  }
  if (!e.suggestions.empty()) {
    std::cerr << "  did you mean:";
    for (const auto& s : e.suggestions) std::cerr << ' ' << s;
    std::cerr << '\n';
  }
}

int run_validate(const Options& o) {
  require(o.ontology, "--ontology");
  std::vector<std::string> warnings;
  const oqr::Ontology ont = oqr::Ontology::load(oqr::read_text_file(o.ontology), &warnings);
  std::cout << "ontology: " << ont.classes().size() << " classes, " << ont.properties().size()
            << " properties, " << ont.individuals().size() << " individuals, "
            << ont.links().size() << " links\n";
  if (o.mappings.empty()) {
    if (!o.data.empty() || !o.store.empty()) {
      throw UsageError("validating --data or --store needs --mappings");
    }
  } else {
    const auto reg = oqr::MappingRegistry::load(oqr::read_text_file(o.mappings), ont);
    std::cout << "mappings: " << reg.relations().size() << " relations, "
              << reg.bindings().size() << " bindings\n";
    if (!o.data.empty()) {
      const auto db = oqr::Database::load_csv(o.data, reg, &warnings);
      std::size_t rows = 0;
      for (const auto& [name, t] : db.tables()) rows += t.rows.size();
      std::cout << "data: " << db.tables().size() << " tables, " << rows << " rows\n";
    }
    if (!o.store.empty()) {
      const auto store = oqr::ConceptStore::open(o.store, ont);
      for (const auto& [name, sc] : store.concepts()) {
        try {
          (void)oqr::plan_concept(sc.definition, reg, ont);
        } catch (const oqr::Error& e) {
          throw oqr::Error(oqr::ErrorCode::kValidationFailed,
                           "stored concept " + name + ": " + e.what());
        }
      }
      std::cout << "store: " << store.concepts().size() << " concepts\n";
    }
  }
  print_warnings(warnings);
  std::cout << "ok\n";
  return 0;
}

int run_translate(const Options& o) {
  const auto in = input_of(o);
  const auto svc = load_service(o, false, in.concept_name.has_value());
  const auto t = svc->translate(in);
  print_warnings(t.warnings);
  if (o.emit == "ra" || o.emit == "both") std::cout << t.ra_text << '\n';
  if (o.emit == "sql" || o.emit == "both") std::cout << t.sql << '\n';
  return 0;
}

int run_execute(const Options& o) {
  const auto in = input_of(o);
  const auto svc = load_service(o, true, in.concept_name.has_value());
  print_warnings(svc->load_warnings());
  const auto r = svc->execute(in);
  print_warnings(r.translation.warnings);
  print_rows(r.result);
  return 0;
}

int run_oracle(const Options& o) {
  const auto in = input_of(o);
  const auto svc = load_service(o, true, in.concept_name.has_value());
  print_warnings(svc->load_warnings());
  print_rows(svc->oracle(in));
  return 0;
}

int run_fuzz(const Options& o) {
  const auto report = oqr::run_fuzz(o.seed, o.cases);
  std::cout << report.agreements << "/" << report.cases << " agree\n";
  std::cout << "compared: " << report.row_results << " assertion row sets, "
            << report.key_results << " concept key sets, " << report.nonempty_results
            << " cases with a nonempty answer\n";
  if (report.reproducer) {
    std::cout << "first divergence, minimized:\n" << *report.reproducer;
    return kDivergence;
  }
  return 0;
}

int run_concept_save(const Options& o) {
  const auto svc = load_service(o, false, true);
  std::string text;
  if (o.file == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    text = oqr::read_text_file(o.file);
  }
  const auto defs = oqr::parse_concepts(text, svc->ontology());
  if (defs.empty()) throw UsageError("no concept blocks in " + o.file);
  for (const auto& def : defs) {
    const bool replaced = svc->save_concept(oqr::format_concept(def), o.overwrite);
    std::cout << (replaced ? "replaced " : "saved ") << def.name << '\n';
  }
  return 0;
}

int run_serve(const Options& o) {
  auto svc = load_service(o, false, false);
  print_warnings(svc->load_warnings());
  std::optional<std::filesystem::path> assets;
  if (!o.assets.empty()) assets = o.assets;
  oqr::HttpServer server(*svc, assets);
  const int port = server.bind(o.host, o.port);
  std::cout << "listening on http://" << o.host << ":" << port << std::endl;
  server.listen();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ontology-assisted query reformulation"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;

  app.add_option("--ontology", o.ontology, "Ontology definition file (.odf)");
  app.add_option("--mappings", o.mappings, "Ontology mapping file (.omf)");
  app.add_option("--data", o.data, "Directory of <db>.<relation>.csv files");
  app.add_option("--store", o.store, "Concept store file")->envname("OQR_STORE");

  auto* validate = app.add_subcommand("validate", "Check ontology, mappings, data and store");

  auto add_query = [&](CLI::App* cmd) {
    cmd->add_option("--expr", o.expr, "Restriction expression");
    cmd->add_option("--concept", o.concept_name, "Stored concept name");
    cmd->add_flag("--keys-only", o.keys_only, "Project row results onto the entity key");
  };
  auto* translate = app.add_subcommand("translate", "Translate to relational algebra and SQL");
  add_query(translate);
  translate->add_option("--emit", o.emit, "Output: sql, ra or both")
      ->check(CLI::IsMember({"sql", "ra", "both"}));
  auto* execute = app.add_subcommand("execute", "Translate and evaluate over CSV data");
  add_query(execute);
  auto* oracle = app.add_subcommand("oracle", "Brute-force answer over CSV data");
  add_query(oracle);

  auto* fuzz = app.add_subcommand("fuzz", "Differential engine/oracle campaign");
  fuzz->add_option("--seed", o.seed, "Campaign seed");
  fuzz->add_option("--cases", o.cases, "Number of cases");

  auto* concept_cmd = app.add_subcommand("concept", "Manage stored concepts");
  concept_cmd->require_subcommand(1);
  auto* c_save = concept_cmd->add_subcommand("save", "Save concept blocks from a file, '-' for stdin");
  c_save->add_option("file", o.file, "DLQ file")->required();
  c_save->add_flag("--overwrite", o.overwrite, "Replace existing concepts");
  auto* c_list = concept_cmd->add_subcommand("list", "List stored concept names");
  auto* c_show = concept_cmd->add_subcommand("show", "Print a stored concept");
  c_show->add_option("name", o.name, "Concept name")->required();
  auto* c_delete = concept_cmd->add_subcommand("delete", "Delete a stored concept");
  c_delete->add_option("name", o.name, "Concept name")->required();

  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--port", o.port, "Port, 0 picks a free one");
  serve->add_option("--host", o.host, "Bind address");
  serve->add_option("--assets", o.assets, "Static wizard assets served at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUserError;
  }

  try {
    if (*validate) return run_validate(o);
    if (*translate) return run_translate(o);
    if (*execute) return run_execute(o);
    if (*oracle) return run_oracle(o);
    if (*fuzz) return run_fuzz(o);
    if (*serve) return run_serve(o);
    if (*c_save) return run_concept_save(o);
    if (*c_list) {
      for (const auto& name : load_service(o, false, true)->list_concepts()) {
        std::cout << name << '\n';
      }
      return 0;
    }
    if (*c_show) {
      const auto sc = load_service(o, false, true)->show_concept(o.name);
      std::cout << "# created=" << sc.created << " modified=" << sc.modified << '\n'
                << oqr::format_concept(sc.definition);
      return 0;
    }
    if (*c_delete) {
      load_service(o, false, true)->delete_concept(o.name);
      std::cout << "deleted " << oqr::canonical_name(o.name) << '\n';
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUserError;
  } catch (const oqr::Error& e) {
    report(e, o);
    return e.code() == oqr::ErrorCode::kStorageError ? kInternalError : kUserError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kInternalError;
}
