#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relct/common.hpp"

namespace relct {

struct AttributeDef {
  std::string name;
  std::vector<std::string> domain;
  // True for relationship attributes, which take N/A when the link is absent.
  bool includes_na = false;
};

struct EntityType {
  std::string name;
  std::string key_column;
  std::vector<AttributeDef> attributes;
};

struct Endpoint {
  std::size_t entity = 0;
  std::string label;  // population variable, e.g. "P" in RA(Prof as P, ...)
};

struct RelationshipType {
  std::string name;
  std::array<Endpoint, 2> endpoints;
  std::vector<AttributeDef> attributes;
};

struct PopulationVar {
  std::string label;
  std::size_t entity = 0;
};

enum class VarKind { EntityAttribute, RelationshipAttribute, RelationshipIndicator };

struct FirstOrderVariable {
  VarKind kind = VarKind::EntityAttribute;
  // Entity index for entity attributes, relationship index otherwise.
  std::size_t owner = 0;
  // Attribute index within the owner; unused for indicators.
  std::size_t attribute = 0;
  std::vector<PopVarId> population_vars;
  std::string name;

  bool is_indicator() const { return kind == VarKind::RelationshipIndicator; }
  bool is_relational() const { return kind != VarKind::EntityAttribute; }
};

/// Validated relational vocabulary plus the first-order variables derived
/// from it. Immutable once built.
class Schema {
 public:
  Schema(std::vector<EntityType> entities, std::vector<RelationshipType> relationships);

  const std::vector<EntityType>& entities() const { return entities_; }
  const std::vector<RelationshipType>& relationships() const { return relationships_; }
  const std::vector<PopulationVar>& population_vars() const { return population_vars_; }
  const std::vector<FirstOrderVariable>& variables() const { return variables_; }

  const FirstOrderVariable& variable(VarId id) const { return variables_.at(id); }
  std::optional<VarId> find_variable(std::string_view name) const;
  VarId variable_by_name(std::string_view name) const;
  std::optional<std::size_t> find_entity(std::string_view name) const;
  std::optional<std::size_t> find_relationship(std::string_view name) const;
  std::optional<PopVarId> find_population_var(std::string_view label) const;

  VarId indicator(std::size_t relationship) const { return indicator_of_.at(relationship); }
  /// Entity-attribute variables ranging over one population variable.
  const std::vector<VarId>& entity_variables(PopVarId pv) const { return entity_vars_of_.at(pv); }
  /// Attribute variables of one relationship (indicator excluded).
  const std::vector<VarId>& relationship_attributes(std::size_t rel) const {
    return rel_attr_vars_of_.at(rel);
  }

  /// Number of distinct values the variable can take, N/A included.
  std::size_t cardinality(VarId id) const;
  /// Declared domain size, N/A excluded; 2 for indicators.
  std::size_t domain_size(VarId id) const;
  std::string value_symbol(VarId id, Value v) const;
  Value parse_value(VarId id, std::string_view symbol) const;

  PopSet population_vars_of(VarId id) const;
  PopSet rel_population_vars(RelSet rels) const;

  /// Connected components of a relationship set under shared population vars.
  std::vector<RelSet> connected_components(RelSet rels) const;
  bool is_connected(RelSet rels) const;

  std::size_t num_relationships() const { return relationships_.size(); }

 private:
  void validate();

  std::vector<EntityType> entities_;
  std::vector<RelationshipType> relationships_;
  std::vector<PopulationVar> population_vars_;
  std::vector<FirstOrderVariable> variables_;
  std::map<std::string, VarId, std::less<>> var_by_name_;
  std::vector<VarId> indicator_of_;
  std::vector<std::vector<VarId>> entity_vars_of_;
  std::vector<std::vector<VarId>> rel_attr_vars_of_;
};

/// Parses the line-oriented schema format:
///   entity <Name> key=<col> attr <name>{v1,v2,...} ...
///   rel <Name>(<Entity> as <Var>, <Entity> as <Var>) attr <name>{...} ...
/// '#' starts a comment.
Schema load_schema(std::string_view text);

/// Inverse of load_schema.
std::string write_schema(const Schema& schema);

/// Entity attributes first (entities alphabetical, population vars by label,
/// attributes in declaration order), then for each relationship in
/// declaration order its indicator followed by its attributes.
std::vector<FirstOrderVariable> derive_variables(const std::vector<EntityType>& entities,
                                                 const std::vector<RelationshipType>& relationships,
                                                 const std::vector<PopulationVar>& population_vars);
inline const std::vector<FirstOrderVariable>& derive_variables(const Schema& schema) {
  return schema.variables();
}

struct LatticePoint {
  RelSet relationships = 0;
  PopSet population_vars = 0;
  // Set only for the entity pseudo-point of a single population variable.
  std::optional<PopVarId> entity_point;
  // Sorted ascending.
  std::vector<VarId> variables;

  bool is_entity_point() const { return entity_point.has_value(); }
  std::size_t chain_length() const { return static_cast<std::size_t>(popcount(relationships)); }
  bool operator==(const LatticePoint&) const = default;
};

struct LatticeEdge {
  std::size_t lower = 0;  // index into points()
  std::size_t upper = 0;
};

/// Connected relationship chains ordered by inclusion. Disconnected subsets are
/// not points; their counts are products over connected components.
class RelationshipLattice {
 public:
  RelationshipLattice(const Schema& schema, std::size_t max_chain_length);

  /// Sorted by chain length, then by relationship bitmask.
  const std::vector<LatticePoint>& points() const { return points_; }
  const std::vector<LatticeEdge>& edges() const { return edges_; }
  /// One pseudo-point per population variable, indexed by PopVarId.
  const std::vector<LatticePoint>& entity_points() const { return entity_points_; }
  const LatticePoint* find(RelSet rels) const;
  std::size_t max_chain_length() const { return max_chain_length_; }

 private:
  std::vector<LatticePoint> points_;
  std::vector<LatticeEdge> edges_;
  std::vector<LatticePoint> entity_points_;
  std::map<RelSet, std::size_t> index_;
  std::size_t max_chain_length_;
};

inline constexpr std::size_t kDefaultMaxChainLength = 3;

RelationshipLattice build_lattice(const Schema& schema,
                                  std::size_t max_chain_length = kDefaultMaxChainLength);

/// Variables applicable to a relationship set: member indicators and
/// attributes plus entity attributes of every touched population variable.
std::vector<VarId> applicable_variables(const Schema& schema, RelSet rels);

struct FamilySpec {
  VarId child = 0;
  std::vector<VarId> parents;

  /// Child and parents, sorted ascending.
  std::vector<VarId> variables() const;
  /// Canonical cache key: child then sorted parents.
  std::string key() const;
  bool operator==(const FamilySpec&) const = default;
};

FamilySpec make_family(VarId child, std::vector<VarId> parents);

/// Parses "child <- p1, p2" (or a bare "child") against the schema.
FamilySpec parse_family(const Schema& schema, std::string_view text);
std::string format_family(const Schema& schema, const FamilySpec& family);

/// Relationships referenced by any variable in the list.
RelSet relationships_of(const Schema& schema, std::span<const VarId> vars);
PopSet population_vars_of(const Schema& schema, std::span<const VarId> vars);

/// Minimal lattice point covering the family's relationship variables and
/// population variables. Families over one population variable and no
/// relationship variables map to that variable's entity pseudo-point. Ties
/// among equally small covers go to the lowest relationship bitmask.
const LatticePoint& family_lattice_point(const Schema& schema, const FamilySpec& family,
                                         const RelationshipLattice& lattice);
/// Same lookup; nullptr when no lattice point covers the family.
const LatticePoint* find_family_lattice_point(const Schema& schema, const FamilySpec& family,
                                             const RelationshipLattice& lattice);

}  // namespace relct
