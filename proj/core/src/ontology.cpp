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

#include "oqr/ontology.hpp"

#include <algorithm>
#include <sstream>

#include "line_tokens.hpp"
#include "oqr/error.hpp"
#include "oqr/names.hpp"

namespace oqr {
namespace {

using detail::fail_at;
using detail::TokenizedLine;

std::string ident_at(const TokenizedLine& line, std::size_t idx) {
  if (idx >= line.words.size()) {
    fail_at(ErrorCode::kSyntaxError, line.number, "expected identifier");
  }
  const std::string& word = line.words[idx];
  if (!is_identifier(word)) {
    fail_at(ErrorCode::kSyntaxError, line.number, "invalid identifier '" + word + "'");
  }
  return canonical_name(word);
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_cardinality_keyword(std::string_view kw) {
  return kw == "cardinality" || kw == "mincardinality" || kw == "maxcardinality" ||
         kw == "min" || kw == "max" || kw == "exactly";
}

// Walks single-parent chains and reports the first cycle found.
// The reported line is the latest declaration among the cycle members.
template <typename ParentOf>
void check_acyclic(const std::vector<std::string>& names, ParentOf parent_of,
                   std::map<std::string, std::size_t>& line_of, std::string_view kind) {
  std::map<std::string, int> state;  // 0 unvisited, 1 on stack, 2 done
  for (const auto& start : names) {
    if (state[start] == 2) continue;
    std::vector<std::string> path;
    std::optional<std::string> cur = start;
    while (cur && state[*cur] == 0) {
      state[*cur] = 1;
      path.push_back(*cur);
      cur = parent_of(*cur);
    }
    if (cur && state[*cur] == 1) {
      auto it = std::find(path.begin(), path.end(), *cur);
      std::string members;
      std::size_t line = 0;
      for (; it != path.end(); ++it) {
        if (!members.empty()) members += " -> ";
        members += *it;
        line = std::max(line, line_of[*it]);
      }
      fail_at(ErrorCode::kCycleDetected, line,
              std::string(kind) + " hierarchy contains a cycle: " + members + " -> " + *cur);
    }
    for (const auto& n : path) state[n] = 2;
  }
}

}  // namespace

Ontology Ontology::load(std::string_view text, std::vector<std::string>* warnings) {
  Ontology ont;
  std::map<std::string, std::size_t> class_line;
  std::map<std::string, std::size_t> property_line;
  std::map<std::string, std::size_t> individual_line;
  struct PendingLink {
    std::size_t line;
    std::string subject, property, object;
  };
  std::vector<PendingLink> pending_links;
  std::vector<std::pair<std::size_t, std::pair<std::string, std::string>>> pending_disjoint;

  for (const TokenizedLine& line : detail::tokenize_lines(text)) {
    const std::string kw = lower(line.words[0]);
    if (kw == "class") {
      ClassDecl decl;
      decl.name = ident_at(line, 1);
      decl.display = line.words[1];
      std::size_t i = 2;
      while (i < line.words.size()) {
        if (lower(line.words[i]) != "subclassof") {
          fail_at(ErrorCode::kSyntaxError, line.number,
                  "unexpected '" + line.words[i] + "' in class declaration");
        }
        if (decl.parent) {
          fail_at(ErrorCode::kUnsupported, line.number,
                  "multiple inheritance is not supported for class " + decl.name);
        }
        decl.parent = ident_at(line, i + 1);
        i += 2;
      }
      auto [it, inserted] = ont.classes_.emplace(decl.name, decl);
      if (!inserted && !(it->second == decl)) {
        fail_at(ErrorCode::kConflictingDeclaration, line.number,
                "class " + decl.name + " redeclared with different content");
      }
      class_line.emplace(decl.name, line.number);
    } else if (kw == "disjoint") {
      if (line.words.size() != 3) {
        fail_at(ErrorCode::kSyntaxError, line.number, "disjoint expects two class names");
      }
      std::string a = ident_at(line, 1);
      std::string b = ident_at(line, 2);
      if (a == b) {
        fail_at(ErrorCode::kConflictingDeclaration, line.number,
                "class " + a + " cannot be disjoint with itself");
      }
      if (b < a) std::swap(a, b);
      pending_disjoint.push_back({line.number, {a, b}});
    } else if (kw == "property") {
      PropertyDecl decl;
      decl.name = ident_at(line, 1);
      decl.display = line.words[1];
      std::size_t i = 2;
      while (i < line.words.size()) {
        const std::string clause = lower(line.words[i]);
        std::optional<std::string>* slot = nullptr;
        if (clause == "subpropertyof") {
          if (decl.parent) {
            fail_at(ErrorCode::kUnsupported, line.number,
                    "multiple inheritance is not supported for property " + decl.name);
          }
          slot = &decl.parent;
        } else if (clause == "domain") {
          slot = &decl.domain;
        } else if (clause == "range") {
          slot = &decl.range;
        } else if (clause == "inverse") {
          slot = &decl.inverse;
        } else {
          fail_at(ErrorCode::kSyntaxError, line.number,
                  "unexpected '" + line.words[i] + "' in property declaration");
        }
        if (slot->has_value()) {
          fail_at(ErrorCode::kSyntaxError, line.number, "repeated clause '" + clause + "'");
        }
        *slot = ident_at(line, i + 1);
        i += 2;
      }
      auto [it, inserted] = ont.properties_.emplace(decl.name, decl);
      if (!inserted && !(it->second == decl)) {
        fail_at(ErrorCode::kConflictingDeclaration, line.number,
                "property " + decl.name + " redeclared with different content");
      }
      property_line.emplace(decl.name, line.number);
    } else if (kw == "individual") {
      if (line.words.size() != 4 || lower(line.words[2]) != "type") {
        fail_at(ErrorCode::kSyntaxError, line.number,
                "expected 'individual <Name> type <Class>'");
      }
      const std::string name = ident_at(line, 1);
      auto& decl = ont.individuals_[name];
      if (decl.name.empty()) {
        decl.name = name;
        decl.display = line.words[1];
      }
      decl.types.insert(ident_at(line, 3));
      individual_line.emplace(name, line.number);
    } else if (kw == "link") {
      if (line.words.size() != 4) {
        fail_at(ErrorCode::kSyntaxError, line.number,
                "expected 'link <Subject> <Property> <Object>'");
      }
      const std::string& object = line.words[3];
      if (!is_identifier(object) && !is_number(object)) {
        fail_at(ErrorCode::kSyntaxError, line.number, "invalid link object '" + object + "'");
      }
      pending_links.push_back(
          {line.number, ident_at(line, 1), ident_at(line, 2), canonical_name(object)});
    } else if (is_cardinality_keyword(kw)) {
      fail_at(ErrorCode::kUnsupported, line.number,
              "cardinality restrictions are not supported");
    } else {
      fail_at(ErrorCode::kSyntaxError, line.number, "unknown declaration '" + line.words[0] + "'");
    }
  }

  auto need_class = [&](const std::string& name, std::size_t line, std::string_view what) {
    if (!ont.classes_.count(name)) {
      fail_at(ErrorCode::kUnknownReference, line,
              std::string(what) + " refers to undeclared class " + name);
    }
  };
  auto need_property = [&](const std::string& name, std::size_t line, std::string_view what) {
    if (!ont.properties_.count(name)) {
      fail_at(ErrorCode::kUnknownReference, line,
              std::string(what) + " refers to undeclared property " + name);
    }
  };

  for (const auto& [name, decl] : ont.classes_) {
    if (decl.parent) need_class(*decl.parent, class_line[name], "class " + name);
  }
  for (const auto& [line, pair] : pending_disjoint) {
    need_class(pair.first, line, "disjoint");
    need_class(pair.second, line, "disjoint");
    ont.disjoint_.insert(pair);
  }
  for (const auto& [name, decl] : ont.properties_) {
    const std::size_t line = property_line[name];
    const std::string what = "property " + name;
    if (decl.parent) need_property(*decl.parent, line, what);
    if (decl.inverse) need_property(*decl.inverse, line, what);
    if (decl.domain) need_class(*decl.domain, line, what);
    if (decl.range) need_class(*decl.range, line, what);
  }
  for (const auto& [name, decl] : ont.individuals_) {
    for (const auto& type : decl.types) need_class(type, individual_line[name], "individual " + name);
  }
  for (const auto& pl : pending_links) {
    if (!ont.individuals_.count(pl.subject)) {
      fail_at(ErrorCode::kUnknownReference, pl.line,
              "link subject " + pl.subject + " is not a declared individual");
    }
    need_property(pl.property, pl.line, "link");
    PropertyLink link{pl.subject, pl.property, pl.object, false};
    if (!ont.individuals_.count(pl.object)) {
      if (!is_literal_token(pl.object)) {
        fail_at(ErrorCode::kUnknownReference, pl.line,
                "link object " + pl.object + " is neither an individual nor a literal");
      }
      link.literal_object = true;
    }
    ont.links_.insert(link);
  }

  std::vector<std::string> class_names;
  for (const auto& [name, _] : ont.classes_) class_names.push_back(name);
  check_acyclic(
      class_names,
      [&](const std::string& n) { return ont.classes_.at(n).parent; }, class_line,
      "class");
  std::vector<std::string> property_names;
  for (const auto& [name, _] : ont.properties_) property_names.push_back(name);
  check_acyclic(
      property_names,
      [&](const std::string& n) { return ont.properties_.at(n).parent; },
      property_line, "property");

  for (const auto& [name, decl] : ont.properties_) {
    if (!decl.inverse) continue;
    const auto& other = ont.properties_.at(*decl.inverse);
    if (other.inverse != name) {
      fail_at(ErrorCode::kInverseAsymmetry, property_line[name],
              "property " + name + " declares inverse " + *decl.inverse + " but " +
                  *decl.inverse + " does not declare " + name + " as its inverse");
    }
  }

  std::vector<PropertyLink> added;
  for (const auto& link : ont.links_) {
    const auto& prop = ont.properties_.at(link.property);
    if (!prop.inverse) continue;
    if (link.literal_object) {
      fail(ErrorCode::kInverseAsymmetry,
           "link " + link.subject + " " + link.property + " " + link.object +
               " has a literal object but " + link.property + " has inverse " + *prop.inverse);
    }
    PropertyLink back{link.object, *prop.inverse, link.subject, false};
    if (!ont.links_.count(back)) added.push_back(back);
  }
  for (auto& link : added) {
    if (warnings) {
      warnings->push_back("materialized inverse link " + link.subject + " " + link.property +
                          " " + link.object);
    }
    ont.links_.insert(std::move(link));
  }

  for (const auto& link : ont.links_) {
    const auto& prop = ont.properties_.at(link.property);
    auto within = [&](const std::string& individual, const std::string& cls) {
      const auto& types = ont.individuals_.at(individual).types;
      return std::any_of(types.begin(), types.end(),
                         [&](const std::string& t) { return ont.is_subclass_of(t, cls); });
    };
    if (prop.domain && !within(link.subject, *prop.domain)) {
      fail(ErrorCode::kDomainRangeViolation, "link subject " + link.subject +
                                                 " is outside the domain " + *prop.domain +
                                                 " of " + link.property);
    }
    if (prop.range && !link.literal_object && !within(link.object, *prop.range)) {
      fail(ErrorCode::kDomainRangeViolation, "link object " + link.object +
                                                 " is outside the range " + *prop.range + " of " +
                                                 link.property);
    }
  }

  for (const auto& [name, decl] : ont.individuals_) {
    for (const auto& [a, b] : ont.disjoint_) {
      bool in_a = false;
      bool in_b = false;
      for (const auto& t : decl.types) {
        in_a = in_a || ont.is_subclass_of(t, a);
        in_b = in_b || ont.is_subclass_of(t, b);
      }
      if (in_a && in_b) {
        fail_at(ErrorCode::kDisjointnessViolation, individual_line[name],
                "individual " + name + " is an instance of disjoint classes " + a + " and " + b);
      }
    }
  }
  return ont;
}

const ClassDecl* Ontology::find_class(std::string_view name) const {
  auto it = classes_.find(canonical_name(name));
  return it == classes_.end() ? nullptr : &it->second;
}

const PropertyDecl* Ontology::find_property(std::string_view name) const {
  auto it = properties_.find(canonical_name(name));
  return it == properties_.end() ? nullptr : &it->second;
}

const IndividualDecl* Ontology::find_individual(std::string_view name) const {
  auto it = individuals_.find(canonical_name(name));
  return it == individuals_.end() ? nullptr : &it->second;
}

const ClassDecl& Ontology::require_class(std::string_view name) const {
  const ClassDecl* decl = find_class(name);
  if (!decl) fail(ErrorCode::kUnknownReference, "undeclared class " + canonical_name(name));
  return *decl;
}

bool Ontology::is_subclass_of(std::string_view cls, std::string_view ancestor) const {
  auto it = classes_.find(std::string(cls));
  while (it != classes_.end()) {
    if (it->first == ancestor) return true;
    if (!it->second.parent) return false;
    it = classes_.find(*it->second.parent);
  }
  return false;
}

std::vector<std::string> Ontology::subclasses(std::optional<std::string_view> parent) const {
  std::optional<std::string> want;
  if (parent) want = require_class(*parent).name;
  std::vector<std::string> out;
  for (const auto& [name, decl] : classes_) {
    if (decl.parent == want) out.push_back(name);
  }
  return out;
}

std::vector<std::string> Ontology::property_lineage(std::string_view property) const {
  const PropertyDecl* decl = find_property(property);
  if (!decl) fail(ErrorCode::kUnknownReference, "undeclared property " + canonical_name(property));
  std::vector<std::string> out;
  while (decl) {
    out.push_back(decl->name);
    decl = decl->parent ? &properties_.at(*decl->parent) : nullptr;
  }
  return out;
}

std::vector<std::string> Ontology::instances_of(std::string_view cls, bool transitive) const {
  const std::string& target = require_class(cls).name;
  std::vector<std::string> out;
  for (const auto& [name, decl] : individuals_) {
    const bool match = std::any_of(decl.types.begin(), decl.types.end(), [&](const auto& t) {
      return transitive ? is_subclass_of(t, target) : t == target;
    });
    if (match) out.push_back(name);
  }
  return out;
}

std::vector<std::string> Ontology::applicable_properties(std::string_view cls) const {
  const std::string& target = require_class(cls).name;
  std::vector<std::string> out;
  for (const auto& [name, decl] : properties_) {
    if (!decl.domain || is_subclass_of(target, *decl.domain)) out.push_back(name);
  }
  return out;
}

std::vector<std::string> Ontology::range_values(std::string_view property) const {
  const PropertyDecl* decl = find_property(property);
  if (!decl) fail(ErrorCode::kUnknownReference, "undeclared property " + canonical_name(property));
  std::set<std::string> values;
  if (decl->range) {
    for (auto& name : instances_of(*decl->range, true)) values.insert(std::move(name));
  }
  for (const auto& link : links_) {
    if (link.property == decl->name) values.insert(link.object);
  }
  return {values.begin(), values.end()};
}

std::vector<std::string> Ontology::extension_tokens(std::string_view cls) const {
  auto tokens = instances_of(cls, true);
  if (tokens.empty()) tokens.push_back(require_class(cls).name);
  return tokens;
}

std::string Ontology::to_odf() const {
  std::ostringstream out;
  for (const auto& [name, decl] : classes_) {
    out << "class " << name;
    if (decl.parent) out << " subclassof " << *decl.parent;
    out << '\n';
  }
  for (const auto& [a, b] : disjoint_) out << "disjoint " << a << ' ' << b << '\n';
  for (const auto& [name, decl] : properties_) {
    out << "property " << name;
    if (decl.parent) out << " subpropertyof " << *decl.parent;
    if (decl.domain) out << " domain " << *decl.domain;
    if (decl.range) out << " range " << *decl.range;
    if (decl.inverse) out << " inverse " << *decl.inverse;
    out << '\n';
  }
  for (const auto& [name, decl] : individuals_) {
    for (const auto& t : decl.types) out << "individual " << name << " type " << t << '\n';
  }
  for (const auto& link : links_) {
    out << "link " << link.subject << ' ' << link.property << ' ' << link.object << '\n';
  }
  return out.str();
}

}  // namespace oqr
