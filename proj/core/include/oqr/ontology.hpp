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

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace oqr {

struct ClassDecl {
  std::string name;
  std::optional<std::string> parent;
  std::string display;  // spelling of the first declaration

  bool operator==(const ClassDecl& other) const {
    return name == other.name && parent == other.parent;
  }
};

struct PropertyDecl {
  std::string name;
  std::optional<std::string> parent;
  std::optional<std::string> domain;
  std::optional<std::string> range;
  std::optional<std::string> inverse;
  std::string display;

  bool operator==(const PropertyDecl& other) const {
    return name == other.name && parent == other.parent && domain == other.domain &&
           range == other.range && inverse == other.inverse;
  }
};

/// An individual may be typed more than once; all of its types together must
/// respect the disjointness axioms.
struct IndividualDecl {
  std::string name;
  std::set<std::string> types;
  std::string display;
};

struct PropertyLink {
  std::string subject;
  std::string property;
  std::string object;
  bool literal_object = false;

  auto operator<=>(const PropertyLink&) const = default;
};

/// Immutable, validated ontology. Every name stored here is canonical (see
/// canonical_name). Lookups accept raw spellings and canonicalize them.
class Ontology {
 public:
  Ontology() = default;

  /// Parses and validates an Ontology Definition File. Missing inverse links
  /// are materialized; one warning per added link is appended to `warnings`.
  static Ontology load(std::string_view text, std::vector<std::string>* warnings = nullptr);

  const ClassDecl* find_class(std::string_view name) const;
  const PropertyDecl* find_property(std::string_view name) const;
  const IndividualDecl* find_individual(std::string_view name) const;

  const std::map<std::string, ClassDecl>& classes() const { return classes_; }
  const std::map<std::string, PropertyDecl>& properties() const { return properties_; }
  const std::map<std::string, IndividualDecl>& individuals() const { return individuals_; }
  const std::set<PropertyLink>& links() const { return links_; }
  const std::set<std::pair<std::string, std::string>>& disjoint_pairs() const {
    return disjoint_;
  }

  /// Reflexive-transitive subclass test over canonical names.
  bool is_subclass_of(std::string_view cls, std::string_view ancestor) const;

  /// Direct subclasses of `parent`, or the root classes when `parent` is empty.
  std::vector<std::string> subclasses(std::optional<std::string_view> parent) const;

  /// Sub-property chain starting at `property` itself, nearest first.
  std::vector<std::string> property_lineage(std::string_view property) const;

  std::vector<std::string> instances_of(std::string_view cls, bool transitive) const;
  std::vector<std::string> applicable_properties(std::string_view cls) const;
  std::vector<std::string> range_values(std::string_view property) const;

  /// Tokens that stand for `cls` in column data: its transitive instances, or
  /// the class name itself when it has none.
  std::vector<std::string> extension_tokens(std::string_view cls) const;

  /// Canonical ODF rendering; `load(to_odf())` reproduces this snapshot.
  std::string to_odf() const;

 private:
  const ClassDecl& require_class(std::string_view name) const;

  std::map<std::string, ClassDecl> classes_;
  std::map<std::string, PropertyDecl> properties_;
  std::map<std::string, IndividualDecl> individuals_;
  std::set<PropertyLink> links_;
  std::set<std::pair<std::string, std::string>> disjoint_;
};

inline Ontology load_ontology(std::string_view text,
                              std::vector<std::string>* warnings = nullptr) {
  return Ontology::load(text, warnings);
}

}  // namespace oqr
