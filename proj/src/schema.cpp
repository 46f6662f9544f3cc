#include "relct/schema.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

namespace relct {

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

void validate_attributes(const std::vector<AttributeDef>& attrs, const std::string& owner) {
  std::set<std::string> names;
  for (const auto& a : attrs) {
    if (!is_identifier(a.name)) throw Error("invalid attribute name '" + a.name + "' in " + owner);
    if (!names.insert(a.name).second)
      throw Error("duplicate name: attribute '" + a.name + "' in " + owner);
    if (a.domain.empty()) throw Error("empty domain for attribute '" + a.name + "' in " + owner);
    if (a.domain.size() > kMaxDomainSize)
      throw Error("domain of '" + a.name + "' exceeds " + std::to_string(kMaxDomainSize) + " values");
    std::set<std::string> values;
    for (const auto& v : a.domain) {
      if (v.empty() || v == "N/A") throw Error("invalid domain value '" + v + "' for " + a.name);
      if (v.find_first_of(",{} \t") != std::string::npos)
        throw Error("invalid domain value '" + v + "' for " + a.name);
      if (!values.insert(v).second) throw Error("duplicate domain value '" + v + "' for " + a.name);
    }
  }
}

// Parses the trailing "attr name{a,b} attr other{c}" clauses of a schema line.
std::vector<AttributeDef> parse_attr_clauses(std::string_view rest, std::size_t line, bool rel) {
  std::vector<AttributeDef> out;
  rest = trim(rest);
  while (!rest.empty()) {
    if (rest.substr(0, 4) != "attr" || rest.size() < 5 ||
        !std::isspace(static_cast<unsigned char>(rest[4])))
      throw ParseError(line, "expected 'attr <name>{...}'");
    rest = trim(rest.substr(4));
    auto open = rest.find('{');
    auto close = rest.find('}');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open)
      throw ParseError(line, "malformed attribute domain");
    AttributeDef attr;
    attr.name = std::string(trim(rest.substr(0, open)));
    attr.includes_na = rel;
    if (!is_identifier(attr.name)) throw ParseError(line, "invalid attribute name '" + attr.name + "'");
    std::string_view body = rest.substr(open + 1, close - open - 1);
    if (!trim(body).empty()) {
      std::size_t pos = 0;
      while (true) {
        auto comma = body.find(',', pos);
        auto item = trim(body.substr(pos, comma == std::string_view::npos ? body.npos : comma - pos));
        if (item.empty()) throw ParseError(line, "empty value in domain of '" + attr.name + "'");
        attr.domain.emplace_back(item);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
      }
    }
    if (attr.domain.empty()) throw ParseError(line, "empty domain for attribute '" + attr.name + "'");
    out.push_back(std::move(attr));
    rest = trim(rest.substr(close + 1));
  }
  return out;
}

std::string format_attrs(const std::vector<AttributeDef>& attrs) {
  std::string out;
  for (const auto& a : attrs) {
    out += " attr " + a.name + "{";
    for (std::size_t i = 0; i < a.domain.size(); ++i) {
      if (i) out += ",";
      out += a.domain[i];
    }
    out += "}";
  }
  return out;
}

}  // namespace

std::vector<FirstOrderVariable> derive_variables(const std::vector<EntityType>& entities,
                                                 const std::vector<RelationshipType>& relationships,
                                                 const std::vector<PopulationVar>& population_vars) {
  std::vector<FirstOrderVariable> out;
  std::vector<std::size_t> entity_order(entities.size());
  std::iota(entity_order.begin(), entity_order.end(), 0);
  std::sort(entity_order.begin(), entity_order.end(),
            [&](std::size_t a, std::size_t b) { return entities[a].name < entities[b].name; });
  std::vector<PopVarId> pv_order(population_vars.size());
  std::iota(pv_order.begin(), pv_order.end(), 0);
  std::sort(pv_order.begin(), pv_order.end(), [&](PopVarId a, PopVarId b) {
    return population_vars[a].label < population_vars[b].label;
  });

  for (std::size_t e : entity_order) {
    for (PopVarId pv : pv_order) {
      if (population_vars[pv].entity != e) continue;
      for (std::size_t a = 0; a < entities[e].attributes.size(); ++a) {
        FirstOrderVariable v;
        v.kind = VarKind::EntityAttribute;
        v.owner = e;
        v.attribute = a;
        v.population_vars = {pv};
        v.name = entities[e].attributes[a].name + "(" + population_vars[pv].label + ")";
        out.push_back(std::move(v));
      }
    }
  }

  auto label_pv = [&](const std::string& label) -> PopVarId {
    for (PopVarId i = 0; i < population_vars.size(); ++i)
      if (population_vars[i].label == label) return i;
    throw Error("unbound population variable " + label);
  };
  for (std::size_t r = 0; r < relationships.size(); ++r) {
    const auto& rel = relationships[r];
    std::vector<PopVarId> pvs{label_pv(rel.endpoints[0].label), label_pv(rel.endpoints[1].label)};
    std::string args = "(" + rel.endpoints[0].label + "," + rel.endpoints[1].label + ")";
    FirstOrderVariable ind;
    ind.kind = VarKind::RelationshipIndicator;
    ind.owner = r;
    ind.population_vars = pvs;
    ind.name = rel.name + args;
    out.push_back(std::move(ind));
    for (std::size_t a = 0; a < rel.attributes.size(); ++a) {
      FirstOrderVariable v;
      v.kind = VarKind::RelationshipAttribute;
      v.owner = r;
      v.attribute = a;
      v.population_vars = pvs;
      v.name = rel.attributes[a].name + args;
      out.push_back(std::move(v));
    }
  }
  return out;
}

Schema::Schema(std::vector<EntityType> entities, std::vector<RelationshipType> relationships)
    : entities_(std::move(entities)), relationships_(std::move(relationships)) {
  validate();
}

void Schema::validate() {
  std::set<std::string> names;
  for (auto& e : entities_) {
    if (!is_identifier(e.name)) throw Error("invalid entity name '" + e.name + "'");
    if (!names.insert(e.name).second) throw Error("duplicate name: entity '" + e.name + "'");
    if (!is_identifier(e.key_column)) throw Error("entity '" + e.name + "' needs a key column");
    for (auto& a : e.attributes) a.includes_na = false;
    validate_attributes(e.attributes, e.name);
    for (const auto& a : e.attributes)
      if (a.name == e.key_column) throw Error("duplicate name: attribute equals key in " + e.name);
  }
  if (relationships_.size() > kMaxRelationships)
    throw Error("at most " + std::to_string(kMaxRelationships) + " relationships are supported");

  std::map<std::string, std::size_t> label_entity;
  std::vector<std::string> label_order;
  for (auto& r : relationships_) {
    if (!is_identifier(r.name)) throw Error("invalid relationship name '" + r.name + "'");
    if (!names.insert(r.name).second) throw Error("duplicate name: relationship '" + r.name + "'");
    if (r.endpoints[0].label == r.endpoints[1].label)
      throw Error("relationship '" + r.name + "' binds one population variable twice");
    for (const auto& ep : r.endpoints) {
      if (ep.entity >= entities_.size()) throw Error("unknown entity type in " + r.name);
      if (!is_identifier(ep.label)) throw Error("invalid population variable '" + ep.label + "'");
      auto [it, inserted] = label_entity.emplace(ep.label, ep.entity);
      if (inserted) {
        label_order.push_back(ep.label);
      } else if (it->second != ep.entity) {
        throw Error("population variable '" + ep.label + "' bound to two entity types");
      }
    }
    for (auto& a : r.attributes) a.includes_na = true;
    validate_attributes(r.attributes, r.name);
  }
  // Entities no relationship mentions still need a population variable.
  for (std::size_t e = 0; e < entities_.size(); ++e) {
    bool used = std::any_of(label_entity.begin(), label_entity.end(),
                            [&](const auto& kv) { return kv.second == e; });
    if (used) continue;
    auto [it, inserted] = label_entity.emplace(entities_[e].name, e);
    if (!inserted) throw Error("population variable '" + entities_[e].name + "' is ambiguous");
  }
  if (label_entity.size() > kMaxPopulationVars)
    throw Error("at most " + std::to_string(kMaxPopulationVars) + " population variables");
  for (const auto& [label, e] : label_entity) population_vars_.push_back({label, e});

  variables_ = derive_variables(entities_, relationships_, population_vars_);
  indicator_of_.assign(relationships_.size(), 0);
  entity_vars_of_.assign(population_vars_.size(), {});
  rel_attr_vars_of_.assign(relationships_.size(), {});
  for (VarId id = 0; id < variables_.size(); ++id) {
    const auto& v = variables_[id];
    if (!var_by_name_.emplace(v.name, id).second)
      throw Error("duplicate name: variable '" + v.name + "'");
    switch (v.kind) {
      case VarKind::EntityAttribute:
        entity_vars_of_[v.population_vars[0]].push_back(id);
        break;
      case VarKind::RelationshipIndicator:
        indicator_of_[v.owner] = id;
        break;
      case VarKind::RelationshipAttribute:
        rel_attr_vars_of_[v.owner].push_back(id);
        break;
    }
  }
}

std::optional<VarId> Schema::find_variable(std::string_view name) const {
  auto it = var_by_name_.find(name);
  if (it == var_by_name_.end()) return std::nullopt;
  return it->second;
}

VarId Schema::variable_by_name(std::string_view name) const {
  auto id = find_variable(name);
  if (!id) throw Error("unknown variable '" + std::string(name) + "'");
  return *id;
}

std::optional<std::size_t> Schema::find_entity(std::string_view name) const {
  for (std::size_t i = 0; i < entities_.size(); ++i)
    if (entities_[i].name == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> Schema::find_relationship(std::string_view name) const {
  for (std::size_t i = 0; i < relationships_.size(); ++i)
    if (relationships_[i].name == name) return i;
  return std::nullopt;
}

std::optional<PopVarId> Schema::find_population_var(std::string_view label) const {
  for (PopVarId i = 0; i < population_vars_.size(); ++i)
    if (population_vars_[i].label == label) return i;
  return std::nullopt;
}

std::size_t Schema::domain_size(VarId id) const {
  const auto& v = variable(id);
  switch (v.kind) {
    case VarKind::EntityAttribute:
      return entities_[v.owner].attributes[v.attribute].domain.size();
    case VarKind::RelationshipAttribute:
      return relationships_[v.owner].attributes[v.attribute].domain.size();
    case VarKind::RelationshipIndicator:
      return 2;
  }
  return 0;
}

std::size_t Schema::cardinality(VarId id) const {
  const auto& v = variable(id);
  return domain_size(id) + (v.kind == VarKind::RelationshipAttribute ? 1 : 0);
}

std::string Schema::value_symbol(VarId id, Value value) const {
  const auto& v = variable(id);
  if (value == kNA) return "N/A";
  if (value == kDontCare) return "*";
  switch (v.kind) {
    case VarKind::RelationshipIndicator:
      return value == kTrue ? "T" : "F";
    case VarKind::EntityAttribute:
      return entities_[v.owner].attributes[v.attribute].domain.at(value);
    case VarKind::RelationshipAttribute:
      return relationships_[v.owner].attributes[v.attribute].domain.at(value);
  }
  return {};
}

Value Schema::parse_value(VarId id, std::string_view symbol) const {
  const auto& v = variable(id);
  if (v.kind == VarKind::RelationshipIndicator) {
    if (symbol == "T") return kTrue;
    if (symbol == "F") return kFalse;
  } else {
    if (symbol == "N/A" && v.kind == VarKind::RelationshipAttribute) return kNA;
    const auto& domain = v.kind == VarKind::EntityAttribute
                             ? entities_[v.owner].attributes[v.attribute].domain
                             : relationships_[v.owner].attributes[v.attribute].domain;
    auto it = std::find(domain.begin(), domain.end(), symbol);
    if (it != domain.end()) return static_cast<Value>(it - domain.begin());
  }
  throw IntegrityError("value '" + std::string(symbol) + "' is outside the domain of " + v.name);
}

PopSet Schema::population_vars_of(VarId id) const {
  PopSet out = 0;
  for (PopVarId pv : variable(id).population_vars) out |= PopSet{1} << pv;
  return out;
}

PopSet Schema::rel_population_vars(RelSet rels) const {
  PopSet out = 0;
  for (std::size_t r = 0; r < relationships_.size(); ++r) {
    if (!(rels >> r & 1u)) continue;
    out |= population_vars_of(indicator_of_[r]);
  }
  return out;
}

std::vector<RelSet> Schema::connected_components(RelSet rels) const {
  std::vector<RelSet> out;
  RelSet remaining = rels;
  while (remaining) {
    RelSet comp = remaining & (~remaining + 1);
    PopSet pops = rel_population_vars(comp);
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t r = 0; r < relationships_.size(); ++r) {
        RelSet bit = RelSet{1} << r;
        if (!(remaining & bit) || (comp & bit)) continue;
        PopSet rp = rel_population_vars(bit);
        if (rp & pops) {
          comp |= bit;
          pops |= rp;
          grew = true;
        }
      }
    }
    out.push_back(comp);
    remaining &= ~comp;
  }
  return out;
}

bool Schema::is_connected(RelSet rels) const {
  return rels != 0 && connected_components(rels).size() == 1;
}

Schema load_schema(std::string_view text) {
  std::vector<EntityType> entities;
  struct PendingRel {
    RelationshipType rel;
    std::array<std::string, 2> entity_names;
    std::size_t line;
  };
  std::vector<PendingRel> pending;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.substr(0, 7) == "entity " || line.substr(0, 7) == "entity\t") {
      std::string_view rest = trim(line.substr(7));
      auto sp = rest.find_first_of(" \t");
      EntityType e;
      e.name = std::string(rest.substr(0, sp));
      if (!is_identifier(e.name)) throw ParseError(line_no, "invalid entity name '" + e.name + "'");
      rest = sp == std::string_view::npos ? std::string_view{} : trim(rest.substr(sp));
      if (rest.substr(0, 4) != "key=") throw ParseError(line_no, "expected key=<column>");
      rest = rest.substr(4);
      sp = rest.find_first_of(" \t");
      e.key_column = std::string(rest.substr(0, sp));
      if (!is_identifier(e.key_column)) throw ParseError(line_no, "invalid key column");
      rest = sp == std::string_view::npos ? std::string_view{} : rest.substr(sp);
      e.attributes = parse_attr_clauses(rest, line_no, false);
      for (const auto& other : entities)
        if (other.name == e.name) throw ParseError(line_no, "duplicate name: entity '" + e.name + "'");
      try {
        validate_attributes(e.attributes, e.name);
      } catch (const ParseError&) {
        throw;
      } catch (const Error& err) {
        throw ParseError(line_no, err.what());
      }
      entities.push_back(std::move(e));
    } else if (line.substr(0, 4) == "rel " || line.substr(0, 4) == "rel\t") {
      std::string_view rest = trim(line.substr(4));
      auto open = rest.find('(');
      auto close = rest.find(')');
      if (open == std::string_view::npos || close == std::string_view::npos || close < open)
        throw ParseError(line_no, "expected rel <Name>(<Entity> as <Var>, <Entity> as <Var>)");
      PendingRel p;
      p.line = line_no;
      p.rel.name = std::string(trim(rest.substr(0, open)));
      if (!is_identifier(p.rel.name)) throw ParseError(line_no, "invalid relationship name");
      std::string_view args = rest.substr(open + 1, close - open - 1);
      auto comma = args.find(',');
      if (comma == std::string_view::npos || args.find(',', comma + 1) != std::string_view::npos)
        throw ParseError(line_no, "relationships must be binary");
      std::array<std::string_view, 2> parts{trim(args.substr(0, comma)), trim(args.substr(comma + 1))};
      for (int i = 0; i < 2; ++i) {
        std::istringstream in{std::string(parts[i])};
        std::string entity, as, var, extra;
        in >> entity >> as >> var;
        if (as != "as" || var.empty() || (in >> extra))
          throw ParseError(line_no, "expected '<Entity> as <Var>' in relationship arguments");
        p.entity_names[i] = entity;
        p.rel.endpoints[i].label = var;
      }
      p.rel.attributes = parse_attr_clauses(rest.substr(close + 1), line_no, true);
      pending.push_back(std::move(p));
    } else {
      throw ParseError(line_no, "expected 'entity' or 'rel'");
    }
  }

  std::vector<RelationshipType> rels;
  for (auto& p : pending) {
    for (int i = 0; i < 2; ++i) {
      auto it = std::find_if(entities.begin(), entities.end(),
                             [&](const EntityType& e) { return e.name == p.entity_names[i]; });
      if (it == entities.end())
        throw ParseError(p.line, "unknown entity type '" + p.entity_names[i] + "'");
      p.rel.endpoints[i].entity = static_cast<std::size_t>(it - entities.begin());
    }
    rels.push_back(std::move(p.rel));
  }
  return Schema(std::move(entities), std::move(rels));
}

std::string write_schema(const Schema& schema) {
  std::string out;
  for (const auto& e : schema.entities())
    out += "entity " + e.name + " key=" + e.key_column + format_attrs(e.attributes) + "\n";
  for (const auto& r : schema.relationships()) {
    out += "rel " + r.name + "(" + schema.entities()[r.endpoints[0].entity].name + " as " +
           r.endpoints[0].label + ", " + schema.entities()[r.endpoints[1].entity].name + " as " +
           r.endpoints[1].label + ")" + format_attrs(r.attributes) + "\n";
  }
  return out;
}

std::vector<VarId> applicable_variables(const Schema& schema, RelSet rels) {
  std::vector<VarId> out;
  for (std::size_t r = 0; r < schema.num_relationships(); ++r) {
    if (!(rels >> r & 1u)) continue;
    out.push_back(schema.indicator(r));
    for (VarId v : schema.relationship_attributes(r)) out.push_back(v);
  }
  PopSet pops = schema.rel_population_vars(rels);
  for (PopVarId pv = 0; pv < schema.population_vars().size(); ++pv)
    if (pops >> pv & 1u)
      for (VarId v : schema.entity_variables(pv)) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

RelationshipLattice::RelationshipLattice(const Schema& schema, std::size_t max_chain_length)
    : max_chain_length_(max_chain_length) {
  if (max_chain_length == 0) throw Error("max_chain_length must be at least 1");
  const std::size_t n = schema.num_relationships();
  std::set<RelSet> level;
  for (std::size_t r = 0; r < n; ++r) level.insert(RelSet{1} << r);
  std::set<RelSet> all;
  for (std::size_t len = 1; len <= max_chain_length && !level.empty(); ++len) {
    all.insert(level.begin(), level.end());
    std::set<RelSet> next;
    if (len == max_chain_length) break;
    for (RelSet s : level) {
      PopSet pops = schema.rel_population_vars(s);
      for (std::size_t r = 0; r < n; ++r) {
        RelSet bit = RelSet{1} << r;
        if ((s & bit) || !(schema.rel_population_vars(bit) & pops)) continue;
        next.insert(s | bit);
      }
    }
    level = std::move(next);
  }
  std::vector<RelSet> ordered(all.begin(), all.end());
  std::sort(ordered.begin(), ordered.end(), [](RelSet a, RelSet b) {
    int pa = popcount(a), pb = popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  for (RelSet s : ordered) {
    LatticePoint p;
    p.relationships = s;
    p.population_vars = schema.rel_population_vars(s);
    p.variables = applicable_variables(schema, s);
    index_.emplace(s, points_.size());
    points_.push_back(std::move(p));
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    RelSet s = points_[i].relationships;
    for (std::size_t r = 0; r < n; ++r) {
      RelSet bit = RelSet{1} << r;
      if (!(s & bit) || s == bit) continue;
      if (auto it = index_.find(s & ~bit); it != index_.end()) edges_.push_back({it->second, i});
    }
  }
  for (PopVarId pv = 0; pv < schema.population_vars().size(); ++pv) {
    LatticePoint p;
    p.population_vars = PopSet{1} << pv;
    p.entity_point = pv;
    p.variables = schema.entity_variables(pv);
    entity_points_.push_back(std::move(p));
  }
}

const LatticePoint* RelationshipLattice::find(RelSet rels) const {
  auto it = index_.find(rels);
  return it == index_.end() ? nullptr : &points_[it->second];
}

RelationshipLattice build_lattice(const Schema& schema, std::size_t max_chain_length) {
  return RelationshipLattice(schema, max_chain_length);
}

std::vector<VarId> FamilySpec::variables() const {
  std::vector<VarId> out = parents;
  out.push_back(child);
  std::sort(out.begin(), out.end());
  return out;
}

std::string FamilySpec::key() const {
  std::string out = std::to_string(child) + "<";
  std::vector<VarId> sorted = parents;
  std::sort(sorted.begin(), sorted.end());
  for (VarId p : sorted) out += std::to_string(p) + ",";
  return out;
}

FamilySpec make_family(VarId child, std::vector<VarId> parents) {
  std::sort(parents.begin(), parents.end());
  if (std::adjacent_find(parents.begin(), parents.end()) != parents.end())
    throw Error("family has a repeated parent");
  if (std::binary_search(parents.begin(), parents.end(), child))
    throw Error("family child appears among its parents");
  return FamilySpec{child, std::move(parents)};
}

FamilySpec parse_family(const Schema& schema, std::string_view text) {
  text = trim(text);
  auto arrow = text.find("<-");
  VarId child = schema.variable_by_name(trim(text.substr(0, arrow)));
  std::vector<VarId> parents;
  if (arrow != std::string_view::npos) {
    std::string_view rest = text.substr(arrow + 2);
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= rest.size(); ++i) {
      if (i == rest.size() || (rest[i] == ',' && depth == 0)) {
        auto item = trim(rest.substr(start, i - start));
        if (!item.empty()) parents.push_back(schema.variable_by_name(item));
        start = i + 1;
      } else if (rest[i] == '(') {
        ++depth;
      } else if (rest[i] == ')') {
        --depth;
      }
    }
  }
  return make_family(child, std::move(parents));
}

std::string format_family(const Schema& schema, const FamilySpec& family) {
  std::string out = schema.variable(family.child).name;
  if (family.parents.empty()) return out;
  out += " <- ";
  for (std::size_t i = 0; i < family.parents.size(); ++i) {
    if (i) out += ", ";
    out += schema.variable(family.parents[i]).name;
  }
  return out;
}

RelSet relationships_of(const Schema& schema, std::span<const VarId> vars) {
  RelSet out = 0;
  for (VarId v : vars) {
    const auto& var = schema.variable(v);
    if (var.is_relational()) out |= RelSet{1} << var.owner;
  }
  return out;
}

PopSet population_vars_of(const Schema& schema, std::span<const VarId> vars) {
  PopSet out = 0;
  for (VarId v : vars) out |= schema.population_vars_of(v);
  return out;
}

const LatticePoint* find_family_lattice_point(const Schema& schema, const FamilySpec& family,
                                             const RelationshipLattice& lattice) {
  auto vars = family.variables();
  RelSet rels = relationships_of(schema, vars);
  PopSet pops = population_vars_of(schema, vars);
  if (rels == 0 && popcount(pops) == 1)
    return &lattice.entity_points().at(static_cast<std::size_t>(__builtin_ctzll(pops)));
  for (const auto& p : lattice.points())
    if ((p.relationships & rels) == rels && (p.population_vars & pops) == pops) return &p;
  return nullptr;
}

const LatticePoint& family_lattice_point(const Schema& schema, const FamilySpec& family,
                                         const RelationshipLattice& lattice) {
  if (const LatticePoint* p = find_family_lattice_point(schema, family, lattice)) return *p;
  throw Error("no covering lattice point for family " + format_family(schema, family));
}

}  // namespace relct
