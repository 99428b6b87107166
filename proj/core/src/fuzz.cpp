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

#include "oqr/fuzz.hpp"

#include <random>
#include <sstream>
#include <utility>

#include "oqr/backend.hpp"
#include "oqr/engine.hpp"
#include "oqr/error.hpp"
#include "oqr/mapping.hpp"
#include "oqr/ontology.hpp"
#include "oqr/oracle.hpp"

namespace oqr {
namespace {

// Modulo draws keep a seed's cases identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool chance(double p) { return static_cast<double>(gen_() % 1000) < p * 1000.0; }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

 private:
  std::mt19937_64 gen_;
};

struct World {
  std::vector<std::string> classes;
  std::vector<std::string> individuals;
  std::vector<std::string> properties;
  std::vector<std::string> value_pool;
};

Operand random_individuals(Rng& rng, const World& w) {
  std::vector<std::string> names;
  const std::size_t n = rng.between(1, 3);
  for (std::size_t i = 0; i < n; ++i) names.push_back(rng.pick(w.individuals));
  return set_operand(std::move(names));
}

std::string random_value(Rng& rng, const World& w) {
  if (rng.chance(0.25)) return rng.chance(0.5) ? "TRUE" : "FALSE";
  return rng.pick(w.individuals);
}

Expr random_atom(Rng& rng, const World& w, bool allow_only) {
  const std::string& p = rng.pick(w.properties);
  if (allow_only && rng.chance(0.2)) {
    return Expr::only(p, rng.chance(0.5) ? class_operand(rng.pick(w.classes))
                                         : random_individuals(rng, w));
  }
  switch (rng.below(4)) {
    case 0:
      return Expr::some(p, class_operand(rng.pick(w.classes)));
    case 1:
      return Expr::some(p, random_individuals(rng, w));
    case 2:
      return Expr::has(p, single_operand(random_value(rng, w)), rng.chance(0.3));
    default: {
      std::vector<std::string> vals;
      const std::size_t n = rng.between(1, 3);
      for (std::size_t i = 0; i < n; ++i) vals.push_back(random_value(rng, w));
      return Expr::has(p, set_operand(std::move(vals)), rng.chance(0.3));
    }
  }
}

Expr random_expr(Rng& rng, const World& w, std::size_t depth, bool root) {
  if (depth <= 1 || rng.chance(0.35)) return random_atom(rng, w, root);
  const std::size_t shape = rng.below(3);
  if (shape == 0) return Expr::complement(random_expr(rng, w, depth - 1, false));
  std::vector<Expr> kids;
  const std::size_t n = rng.between(2, 3);
  for (std::size_t i = 0; i < n; ++i) kids.push_back(random_expr(rng, w, depth - 1, false));
  return Expr::junction(shape == 1 ? ExprKind::kUnion : ExprKind::kIntersection, std::move(kids));
}

std::string error_text(const Error& e) {
  return std::string(to_string(e.code())) + ": " + e.what();
}

std::string rows_text(const RowSet& rows) {
  std::string out;
  for (const auto& r : rows.rows) {
    out += "  ";
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      out += r[i] ? *r[i] : "<null>";
    }
    out += '\n';
  }
  return out.empty() ? "  (empty)\n" : out;
}

// Result of one side: rows, or the error code that was raised.
struct Outcome {
  std::optional<RowSet> rows;
  std::optional<ErrorCode> code;
  std::string text;
};

template <typename F>
Outcome run_side(F&& f) {
  Outcome o;
  try {
    o.rows = f();
    o.text = rows_text(*o.rows);
  } catch (const Error& e) {
    o.code = e.code();
    o.text = error_text(e);
  }
  return o;
}

bool agree(const Outcome& a, const Outcome& b) {
  if (a.code || b.code) return a.code == b.code;
  return *a.rows == *b.rows;
}

void collect_subexprs(const Expr& e, std::vector<Expr>& out) {
  for (const auto& c : e.children) {
    out.push_back(c);
    collect_subexprs(c, out);
  }
}

}  // namespace

namespace {

std::string csv_field(const std::string& v) {
  if (v.find_first_of(",\"\n\r") == std::string::npos) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string table_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) out += (i ? "," : "") + t.header[i];
  out += '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      if (r[i]) out += csv_field(*r[i]);
    }
    out += '\n';
  }
  return out;
}

FuzzCase generate_case(std::uint64_t seed) {
  Rng rng(seed);
  FuzzCase c;
  c.seed = seed;
  World w;
  std::ostringstream odf;

  const std::size_t n_classes = rng.between(2, 6);
  for (std::size_t i = 0; i < n_classes; ++i) {
    w.classes.push_back("K" + std::to_string(i));
    odf << "class " << w.classes.back();
    if (i > 0 && rng.chance(0.5)) odf << " subclassof " << w.classes[rng.below(i)];
    odf << '\n';
  }
  const std::size_t n_individuals = rng.between(2, 6);
  for (std::size_t i = 0; i < n_individuals; ++i) {
    w.individuals.push_back("V" + std::to_string(i));
    odf << "individual " << w.individuals.back() << " type " << rng.pick(w.classes) << '\n';
  }
  const std::size_t n_props = rng.between(1, 4);
  for (std::size_t i = 0; i < n_props; ++i) {
    w.properties.push_back("P" + std::to_string(i));
    odf << "property " << w.properties.back();
    if (i > 0 && rng.chance(0.4)) odf << " subpropertyof " << w.properties[rng.below(i)];
    odf << '\n';
  }
  c.odf = odf.str();

  // Value pool: individuals, class names (extension of empty classes),
  // literals and the occasional NULL.
  w.value_pool = w.individuals;
  for (const auto& k : w.classes) w.value_pool.push_back(k);
  w.value_pool.push_back("TRUE");
  w.value_pool.push_back("FALSE");

  const bool composite = rng.chance(0.25);
  const std::size_t n_cols = rng.between(1, 3);
  RelationMeta main;
  main.name = {"db", "facts"};
  main.columns = {"id"};
  if (composite) main.columns.push_back("seq");
  for (std::size_t i = 0; i < n_cols; ++i) main.columns.push_back("c" + std::to_string(i));
  main.primary_key = composite ? std::vector<std::string>{"id", "seq"}
                               : std::vector<std::string>{"id"};
  const bool second = rng.chance(0.15);

  std::ostringstream omf;
  omf << "relation db.facts columns";
  for (const auto& col : main.columns) omf << ' ' << col;
  omf << " pk";
  for (const auto& k : main.primary_key) omf << ' ' << k;
  omf << '\n';
  if (second) omf << "relation db.other columns id v pk id\n";
  for (std::size_t i = 0; i < n_props; ++i) {
    if (i > 0 && !rng.chance(0.75)) continue;
    if (second && i > 0 && rng.chance(0.3)) {
      omf << "map " << w.properties[i] << " -> db.other.v\n";
    } else {
      omf << "map " << w.properties[i] << " -> db.facts.c" << rng.below(n_cols) << '\n';
    }
  }
  c.omf = omf.str();

  Table facts{main.columns, {}};
  const std::size_t n_entities = rng.between(0, 8);
  for (std::size_t e = 1; e <= n_entities; ++e) {
    const std::size_t n_rows = rng.between(1, 6);
    for (std::size_t r = 1; r <= n_rows; ++r) {
      Row row{std::to_string(e)};
      if (composite) row.push_back(std::to_string(r));
      for (std::size_t i = 0; i < n_cols; ++i) {
        row.push_back(rng.chance(0.08) ? Cell{} : Cell{rng.pick(w.value_pool)});
      }
      facts.rows.push_back(std::move(row));
    }
  }
  c.tables[main.name] = std::move(facts);
  if (second) {
    Table other{{"id", "v"}, {}};
    for (std::size_t e = 1; e <= 3; ++e) other.rows.push_back({std::to_string(e), rng.pick(w.value_pool)});
    c.tables[{"db", "other"}] = std::move(other);
  }

  c.assertion = random_expr(rng, w, rng.between(1, 4), true);
  c.concept_def.name = "FUZZ_" + std::to_string(seed);
  const std::size_t n_assert = rng.between(1, 3);
  for (std::size_t i = 0; i < n_assert; ++i) {
    c.concept_def.assertions.push_back(random_expr(rng, w, rng.between(1, 3), n_assert == 1));
  }
  return c;
}

std::optional<Divergence> check_case(const FuzzCase& c, CaseStats* stats) {
  Ontology ont;
  MappingRegistry reg;
  Database db;
  try {
    ont = Ontology::load(c.odf);
    reg = MappingRegistry::load(c.omf, ont);
    for (const auto& [name, table] : c.tables) {
      db.put(name, Database::parse_table(table_csv(table), reg.relation(name)));
    }
  } catch (const Error& e) {
    return Divergence{"generated world failed to load", error_text(e), ""};
  }

  // The assertion travels through text, as user input does.
  const std::string text = format_expression(c.assertion);
  Expr parsed;
  try {
    parsed = parse_expression(text, ont);
  } catch (const Error& e) {
    return Divergence{"formatted expression failed to parse: " + text, error_text(e), ""};
  }
  if (!(parsed == c.assertion)) {
    return Divergence{"parse(format(e)) != e for " + text, format_expression(parsed), text};
  }

  const Outcome engine_rows =
      run_side([&] { return eval_ra(translate_assertion(parsed, reg, ont), db); });
  const Outcome oracle_rows_out = run_side([&] { return oracle_rows(parsed, db, reg, ont); });
  if (!agree(engine_rows, oracle_rows_out)) {
    return Divergence{"assertion rows differ for " + text, engine_rows.text, oracle_rows_out.text};
  }

  const Outcome engine_keys = run_side([&] {
    const RaExpr plan = plan_concept(c.concept_def, reg, ont);
    RowSet rows = eval_ra(plan, db);
    return plan.yields_keys() ? rows : project_rows(rows, reg.relation(plan.relation).primary_key);
  });
  const Outcome oracle_keys_out = run_side([&] { return oracle_keys(c.concept_def, db, reg, ont); });
  if (!agree(engine_keys, oracle_keys_out)) {
    return Divergence{"concept keys differ for " + c.concept_def.name, engine_keys.text,
                      oracle_keys_out.text};
  }
  if (stats) {
    stats->rows_compared = engine_rows.rows.has_value();
    stats->keys_compared = engine_keys.rows.has_value();
    stats->nonempty = (engine_rows.rows && !engine_rows.rows->rows.empty()) ||
                      (engine_keys.rows && !engine_keys.rows->rows.empty());
  }
  return std::nullopt;
}

FuzzCase minimize(FuzzCase c) {
  auto diverges = [](const FuzzCase& x) { return check_case(x).has_value(); };
  if (!diverges(c)) return c;
  bool progress = true;
  while (progress) {
    progress = false;
    for (auto& [name, table] : c.tables) {
      for (std::size_t i = 0; i < table.rows.size();) {
        FuzzCase trial = c;
        auto& rows = trial.tables[name].rows;
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(i));
        if (diverges(trial)) {
          c = std::move(trial);
          progress = true;
        } else {
          ++i;
        }
      }
    }
    std::vector<Expr> subs;
    collect_subexprs(c.assertion, subs);
    for (const auto& s : subs) {
      FuzzCase trial = c;
      trial.assertion = s;
      if (diverges(trial)) {
        c = std::move(trial);
        progress = true;
        break;
      }
    }
    auto& as = c.concept_def.assertions;
    for (std::size_t i = 0; as.size() > 1 && i < as.size(); ++i) {
      FuzzCase trial = c;
      trial.concept_def.assertions.erase(trial.concept_def.assertions.begin() +
                                         static_cast<std::ptrdiff_t>(i));
      if (diverges(trial)) {
        c = std::move(trial);
        progress = true;
        break;
      }
    }
    for (std::size_t i = 0; i < as.size() && !progress; ++i) {
      subs.clear();
      collect_subexprs(as[i], subs);
      for (const auto& s : subs) {
        FuzzCase trial = c;
        trial.concept_def.assertions[i] = s;
        if (diverges(trial)) {
          c = std::move(trial);
          progress = true;
          break;
        }
      }
    }
  }
  return c;
}

std::string describe_case(const FuzzCase& c) {
  std::ostringstream out;
  out << "# seed " << c.seed << "\n";
  out << "## ontology.odf\n" << c.odf;
  out << "## mappings.omf\n" << c.omf;
  for (const auto& [name, table] : c.tables) {
    out << "## data/" << name.str() << ".csv\n" << table_csv(table);
  }
  out << "## assertion\n" << format_expression(c.assertion) << "\n";
  out << "## concepts.dlq\n" << format_concept(c.concept_def);
  return out.str();
}

FuzzReport run_fuzz(std::uint64_t seed, std::size_t cases,
                    const std::function<void(std::size_t, bool)>& progress) {
  FuzzReport report;
  std::vector<std::uint64_t> seeds(cases);
  {
    std::mt19937_64 master(seed);
    for (auto& s : seeds) s = master();
  }
  for (std::size_t i = 0; i < cases; ++i) {
    const FuzzCase c = generate_case(seeds[i]);
    CaseStats stats;
    const auto div = check_case(c, &stats);
    ++report.cases;
    if (!div) {
      ++report.agreements;
      report.row_results += stats.rows_compared;
      report.key_results += stats.keys_compared;
      report.nonempty_results += stats.nonempty;
    } else if (!report.reproducer) {
      const FuzzCase small = minimize(c);
      const auto small_div = check_case(small);
      std::string text = describe_case(small);
      text += "## divergence\n" + small_div->what + "\n### engine\n" + small_div->engine +
              "\n### oracle\n" + small_div->oracle + "\n";
      report.reproducer = std::move(text);
    }
    if (progress) progress(i, !div);
  }
  return report;
}

}  // namespace oqr
