#include "relct/store.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace relct {

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    auto field = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r'))
      field.remove_suffix(1);
    out.emplace_back(field);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    auto line = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    rows.push_back(split_csv_line(line));
  }
  return rows;
}

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

std::string csv_location(const std::string& table, std::size_t row) {
  return table + ".csv row " + std::to_string(row);
}

DataTable parse_entity_table(const Schema& schema, std::size_t e, std::string_view text) {
  const auto& type = schema.entities()[e];
  auto rows = parse_csv(text);
  if (rows.empty()) throw IntegrityError(type.name + ".csv is missing its header row");
  std::vector<std::string> expected{type.key_column};
  for (const auto& a : type.attributes) expected.push_back(a.name);
  if (rows[0] != expected) throw IntegrityError(type.name + ".csv header does not match the schema");

  DataTable t;
  t.name = type.name;
  t.attributes.assign(type.attributes.size(), {});
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != expected.size())
      throw IntegrityError(csv_location(type.name, r) + ": expected " + std::to_string(expected.size()) +
                           " fields");
    for (const auto& f : row)
      if (f.empty()) throw IntegrityError(csv_location(type.name, r) + ": missing value");
    t.keys.push_back(row[0]);
    for (std::size_t a = 0; a < type.attributes.size(); ++a) {
      const auto& domain = type.attributes[a].domain;
      auto it = std::find(domain.begin(), domain.end(), row[a + 1]);
      if (it == domain.end())
        throw IntegrityError(csv_location(type.name, r) + ": value '" + row[a + 1] +
                             "' outside the domain of " + type.attributes[a].name);
      t.attributes[a].push_back(static_cast<Value>(it - domain.begin()));
    }
  }
  t.row_count = t.keys.size();
  return t;
}

DataTable parse_link_table(const Schema& schema, std::size_t rel, std::string_view text,
                           const std::vector<DataTable>& entities) {
  const auto& type = schema.relationships()[rel];
  auto rows = parse_csv(text);
  if (rows.empty()) throw IntegrityError(type.name + ".csv is missing its header row");
  std::vector<std::string> expected{type.endpoints[0].label, type.endpoints[1].label};
  for (const auto& a : type.attributes) expected.push_back(a.name);
  if (rows[0] != expected) throw IntegrityError(type.name + ".csv header does not match the schema");

  std::array<std::unordered_map<std::string, std::uint32_t>, 2> key_row;
  for (int side = 0; side < 2; ++side) {
    const auto& keys = entities[type.endpoints[side].entity].keys;
    for (std::uint32_t i = 0; i < keys.size(); ++i) key_row[side].emplace(keys[i], i);
  }

  DataTable t;
  t.name = type.name;
  t.attributes.assign(type.attributes.size(), {});
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != expected.size())
      throw IntegrityError(csv_location(type.name, r) + ": expected " + std::to_string(expected.size()) +
                           " fields");
    for (const auto& f : row)
      if (f.empty()) throw IntegrityError(csv_location(type.name, r) + ": missing value");
    for (int side = 0; side < 2; ++side) {
      auto it = key_row[side].find(row[side]);
      if (it == key_row[side].end())
        throw IntegrityError(csv_location(type.name, r) + ": referential integrity violation, no " +
                             schema.entities()[type.endpoints[side].entity].name + " with key '" +
                             row[side] + "'");
      t.endpoints[side].push_back(it->second);
    }
    for (std::size_t a = 0; a < type.attributes.size(); ++a) {
      const auto& domain = type.attributes[a].domain;
      auto it = std::find(domain.begin(), domain.end(), row[a + 2]);
      if (it == domain.end())
        throw IntegrityError(csv_location(type.name, r) + ": value '" + row[a + 2] +
                             "' outside the domain of " + type.attributes[a].name);
      t.attributes[a].push_back(static_cast<Value>(it - domain.begin()));
    }
  }
  t.row_count = t.endpoints[0].size();
  return t;
}

}  // namespace

Database::Database(Schema schema, std::vector<DataTable> entity_tables, std::vector<DataTable> link_tables)
    : schema_(std::move(schema)), entities_(std::move(entity_tables)), links_(std::move(link_tables)) {
  validate_and_index();
}

void Database::validate_and_index() {
  if (entities_.size() != schema_.entities().size() || links_.size() != schema_.relationships().size())
    throw IntegrityError("database needs exactly one table per schema type");
  for (std::size_t e = 0; e < entities_.size(); ++e) {
    const auto& type = schema_.entities()[e];
    auto& cols = entities_[e].columns;
    cols.assign(1, Column{type.key_column, ColumnRole::Key});
    for (const auto& a : type.attributes) cols.push_back({a.name, ColumnRole::Attribute});
  }
  for (std::size_t r = 0; r < links_.size(); ++r) {
    const auto& type = schema_.relationships()[r];
    auto& cols = links_[r].columns;
    cols.clear();
    for (const auto& ep : type.endpoints) cols.push_back({ep.label, ColumnRole::ForeignKey});
    for (const auto& a : type.attributes) cols.push_back({a.name, ColumnRole::Attribute});
  }
  for (std::size_t e = 0; e < entities_.size(); ++e) {
    const auto& t = entities_[e];
    const auto& type = schema_.entities()[e];
    if (t.keys.size() != t.row_count || t.attributes.size() != type.attributes.size())
      throw IntegrityError("malformed entity table " + type.name);
    if (t.row_count > 0xFFFFFFFFu) throw IntegrityError("entity table too large: " + type.name);
    std::unordered_set<std::string> seen;
    for (std::size_t r = 0; r < t.row_count; ++r)
      if (!seen.insert(t.keys[r]).second)
        throw IntegrityError(csv_location(type.name, r + 1) + ": duplicate key '" + t.keys[r] + "'");
    for (std::size_t a = 0; a < type.attributes.size(); ++a) {
      if (t.attributes[a].size() != t.row_count) throw IntegrityError("ragged column in " + type.name);
      for (std::size_t r = 0; r < t.row_count; ++r)
        if (t.attributes[a][r] >= type.attributes[a].domain.size())
          throw IntegrityError(csv_location(type.name, r + 1) + ": value outside the domain of " +
                               type.attributes[a].name);
    }
  }
  indexes_.resize(links_.size());
  for (std::size_t rel = 0; rel < links_.size(); ++rel) {
    const auto& t = links_[rel];
    const auto& type = schema_.relationships()[rel];
    if (t.endpoints[0].size() != t.row_count || t.endpoints[1].size() != t.row_count ||
        t.attributes.size() != type.attributes.size())
      throw IntegrityError("malformed relationship table " + type.name);
    auto& idx = indexes_[rel];
    idx.by_pair.reserve(t.row_count);
    for (std::uint32_t r = 0; r < t.row_count; ++r) {
      for (int side = 0; side < 2; ++side)
        if (t.endpoints[side][r] >= entities_[type.endpoints[side].entity].row_count)
          throw IntegrityError(csv_location(type.name, r + 1) + ": referential integrity violation");
      if (!idx.by_pair.emplace(pair_key(t.endpoints[0][r], t.endpoints[1][r]), r).second)
        throw IntegrityError(csv_location(type.name, r + 1) + ": duplicate link");
    }
    for (std::size_t a = 0; a < type.attributes.size(); ++a) {
      if (t.attributes[a].size() != t.row_count) throw IntegrityError("ragged column in " + type.name);
      for (std::size_t r = 0; r < t.row_count; ++r)
        if (t.attributes[a][r] >= type.attributes[a].domain.size())
          throw IntegrityError(csv_location(type.name, r + 1) + ": value outside the domain of " +
                               type.attributes[a].name);
    }
    for (int side = 0; side < 2; ++side) {
      std::size_t n = entities_[type.endpoints[side].entity].row_count;
      auto& off = idx.offsets[side];
      off.assign(n + 1, 0);
      for (std::uint32_t r = 0; r < t.row_count; ++r) ++off[t.endpoints[side][r] + 1];
      for (std::size_t i = 0; i < n; ++i) off[i + 1] += off[i];
      auto& links = idx.links[side];
      links.resize(t.row_count);
      std::vector<std::uint32_t> fill(off.begin(), off.end() - 1);
      for (std::uint32_t r = 0; r < t.row_count; ++r) links[fill[t.endpoints[side][r]]++] = r;
    }
  }
}

Count Database::grounding_count(PopSet pops) const {
  Count out = 1;
  for (PopVarId pv = 0; pv < schema_.population_vars().size(); ++pv)
    if (pops >> pv & 1u) out = checked_mul(out, population_size(pv));
  return out;
}

std::size_t Database::total_rows() const {
  std::size_t n = 0;
  for (const auto& t : entities_) n += t.row_count;
  for (const auto& t : links_) n += t.row_count;
  return n;
}

Database load_database(const Schema& schema, const std::map<std::string, std::string>& files) {
  std::vector<DataTable> entities;
  for (std::size_t e = 0; e < schema.entities().size(); ++e) {
    auto it = files.find(schema.entities()[e].name);
    if (it == files.end()) throw IntegrityError("no data file for " + schema.entities()[e].name);
    entities.push_back(parse_entity_table(schema, e, it->second));
  }
  std::vector<DataTable> links;
  for (std::size_t r = 0; r < schema.relationships().size(); ++r) {
    auto it = files.find(schema.relationships()[r].name);
    if (it == files.end()) throw IntegrityError("no data file for " + schema.relationships()[r].name);
    links.push_back(parse_link_table(schema, r, it->second, entities));
  }
  return Database(schema, std::move(entities), std::move(links));
}

Database load_database_dir(const Schema& schema, const std::filesystem::path& dir) {
  std::map<std::string, std::string> files;
  auto read = [&](const std::string& name) {
    std::ifstream in(dir / (name + ".csv"), std::ios::binary);
    if (!in) throw IntegrityError("cannot open " + (dir / (name + ".csv")).string());
    std::ostringstream ss;
    ss << in.rdbuf();
    files.emplace(name, ss.str());
  };
  for (const auto& e : schema.entities()) read(e.name);
  for (const auto& r : schema.relationships()) read(r.name);
  return load_database(schema, files);
}

std::string write_table_csv(const Database& db, const DataTable& table) {
  const Schema& schema = db.schema();
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ",";
    out += table.columns[c].name;
  }
  out += "\n";
  auto entity = schema.find_entity(table.name);
  if (entity) {
    const auto& type = schema.entities()[*entity];
    for (std::size_t r = 0; r < table.row_count; ++r) {
      out += table.keys[r];
      for (std::size_t a = 0; a < type.attributes.size(); ++a)
        out += "," + type.attributes[a].domain[table.attributes[a][r]];
      out += "\n";
    }
    return out;
  }
  std::size_t rel = schema.find_relationship(table.name).value();
  const auto& type = schema.relationships()[rel];
  for (std::size_t r = 0; r < table.row_count; ++r) {
    out += db.entity_table(type.endpoints[0].entity).keys[table.endpoints[0][r]] + "," +
           db.entity_table(type.endpoints[1].entity).keys[table.endpoints[1][r]];
    for (std::size_t a = 0; a < type.attributes.size(); ++a)
      out += "," + type.attributes[a].domain[table.attributes[a][r]];
    out += "\n";
  }
  return out;
}

void write_database_dir(const Database& db, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const DataTable& t) {
    std::ofstream out(dir / (t.name + ".csv"), std::ios::binary);
    if (!out) throw Error("cannot write " + (dir / (t.name + ".csv")).string());
    out << write_table_csv(db, t);
  };
  for (std::size_t e = 0; e < db.schema().entities().size(); ++e) write(db.entity_table(e));
  for (std::size_t r = 0; r < db.schema().relationships().size(); ++r) write(db.link_table(r));
  std::ofstream schema_out(dir / "schema.txt", std::ios::binary);
  schema_out << write_schema(db.schema());
}

std::uint64_t database_fingerprint(const Database& db) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  mix(write_schema(db.schema()));
  for (std::size_t e = 0; e < db.schema().entities().size(); ++e) mix(write_table_csv(db, db.entity_table(e)));
  for (std::size_t r = 0; r < db.schema().relationships().size(); ++r)
    mix(write_table_csv(db, db.link_table(r)));
  return h;
}

ContingencyTable entity_ct(const Database& db, PopVarId pv, std::span<const VarId> attrs) {
  const Schema& schema = db.schema();
  std::vector<std::size_t> cols;
  for (VarId v : attrs) {
    const auto& var = schema.variable(v);
    if (var.kind != VarKind::EntityAttribute || var.population_vars[0] != pv)
      throw Error("unknown attribute " + var.name + " for population variable " +
                  schema.population_vars()[pv].label);
    cols.push_back(var.attribute);
  }
  const auto& table = db.entity_table(schema.population_vars()[pv].entity);
  ContingencyTable::RowMap rows;
  std::string key(cols.size(), '\0');
  for (std::size_t r = 0; r < table.row_count; ++r) {
    for (std::size_t i = 0; i < cols.size(); ++i) key[i] = static_cast<char>(table.attributes[cols[i]][r]);
    ++rows[key];
  }
  return ContingencyTable(std::vector<VarId>(attrs.begin(), attrs.end()), std::move(rows));
}

std::size_t tables_joined(const Schema& schema, RelSet rels) {
  return static_cast<std::size_t>(popcount(rels) + popcount(schema.rel_population_vars(rels)));
}

namespace {

struct KeySource {
  enum class Kind { Entity, Link, Constant } kind;
  std::size_t slot = 0;  // population var or position in join order
  const std::vector<Value>* column = nullptr;
  Value constant = 0;
};

struct JoinStep {
  std::size_t rel = 0;
  const DataTable* table = nullptr;
  const LinkIndex* index = nullptr;
  std::array<PopVarId, 2> pv{};
  std::array<bool, 2> bound_before{};
};

class JoinEnumerator {
 public:
  JoinEnumerator(std::vector<JoinStep> steps, std::vector<KeySource> key_sources, std::size_t n_pop)
      : steps_(std::move(steps)),
        sources_(std::move(key_sources)),
        binding_(n_pop, 0),
        links_(steps_.size(), 0),
        key_(sources_.size(), '\0') {}

  ContingencyTable::RowMap run() {
    descend(0);
    return std::move(rows_);
  }

 private:
  void emit() {
    for (std::size_t i = 0; i < sources_.size(); ++i) {
      const auto& s = sources_[i];
      switch (s.kind) {
        case KeySource::Kind::Entity:
          key_[i] = static_cast<char>((*s.column)[binding_[s.slot]]);
          break;
        case KeySource::Kind::Link:
          key_[i] = static_cast<char>((*s.column)[links_[s.slot]]);
          break;
        case KeySource::Kind::Constant:
          key_[i] = static_cast<char>(s.constant);
          break;
      }
    }
    ++rows_[key_];
  }

  void visit(std::size_t depth, std::uint32_t link) {
    const auto& step = steps_[depth];
    links_[depth] = link;
    binding_[step.pv[0]] = step.table->endpoints[0][link];
    binding_[step.pv[1]] = step.table->endpoints[1][link];
    descend(depth + 1);
  }

  void descend(std::size_t depth) {
    if (depth == steps_.size()) {
      emit();
      return;
    }
    const auto& step = steps_[depth];
    if (step.bound_before[0] && step.bound_before[1]) {
      auto it = step.index->by_pair.find((static_cast<std::uint64_t>(binding_[step.pv[0]]) << 32) |
                                         binding_[step.pv[1]]);
      if (it != step.index->by_pair.end()) visit(depth, it->second);
    } else if (step.bound_before[0] || step.bound_before[1]) {
      int side = step.bound_before[0] ? 0 : 1;
      std::uint32_t row = binding_[step.pv[side]];
      const auto& off = step.index->offsets[side];
      const auto& links = step.index->links[side];
      for (std::uint32_t i = off[row]; i < off[row + 1]; ++i) visit(depth, links[i]);
    } else {
      for (std::uint32_t l = 0; l < step.table->row_count; ++l) visit(depth, l);
    }
  }

  std::vector<JoinStep> steps_;
  std::vector<KeySource> sources_;
  std::vector<std::uint32_t> binding_;
  std::vector<std::uint32_t> links_;
  std::string key_;
  ContingencyTable::RowMap rows_;
};

}  // namespace

ContingencyTable join_positive_ct(const Database& db, RelSet rels, std::span<const VarId> keep,
                                  JoinCounter& counter) {
  const Schema& schema = db.schema();
  if (!schema.is_connected(rels)) throw Error("positive join requires a connected relationship set");

  std::vector<JoinStep> steps;
  PopSet bound = 0;
  RelSet remaining = rels;
  while (remaining) {
    std::size_t pick = schema.num_relationships();
    for (std::size_t r = 0; r < schema.num_relationships(); ++r) {
      RelSet bit = RelSet{1} << r;
      if (!(remaining & bit)) continue;
      if (bound == 0 || (schema.rel_population_vars(bit) & bound)) {
        pick = r;
        break;
      }
    }
    JoinStep step;
    step.rel = pick;
    step.table = &db.link_table(pick);
    step.index = &db.link_index(pick);
    const auto& pvs = schema.variable(schema.indicator(pick)).population_vars;
    for (int side = 0; side < 2; ++side) {
      step.pv[side] = pvs[side];
      step.bound_before[side] = (bound >> pvs[side] & 1u) != 0;
    }
    bound |= schema.rel_population_vars(RelSet{1} << pick);
    remaining &= ~(RelSet{1} << pick);
    steps.push_back(step);
  }

  std::vector<KeySource> sources;
  for (VarId v : keep) {
    const auto& var = schema.variable(v);
    KeySource s{KeySource::Kind::Constant};
    switch (var.kind) {
      case VarKind::EntityAttribute: {
        PopVarId pv = var.population_vars[0];
        if (!(bound >> pv & 1u)) throw Error(var.name + " is not applicable to the joined relationships");
        s.kind = KeySource::Kind::Entity;
        s.slot = pv;
        s.column = &db.entity_table(var.owner).attributes[var.attribute];
        break;
      }
      case VarKind::RelationshipAttribute: {
        auto it = std::find_if(steps.begin(), steps.end(), [&](const JoinStep& st) { return st.rel == var.owner; });
        if (it == steps.end()) throw Error(var.name + " is not applicable to the joined relationships");
        s.kind = KeySource::Kind::Link;
        s.slot = static_cast<std::size_t>(it - steps.begin());
        s.column = &db.link_table(var.owner).attributes[var.attribute];
        break;
      }
      case VarKind::RelationshipIndicator:
        if (!(rels >> var.owner & 1u)) throw Error(var.name + " is not applicable to the joined relationships");
        s.constant = kTrue;
        break;
    }
    sources.push_back(s);
  }

  counter.joins += tables_joined(schema, rels) - 1;
  JoinEnumerator join(std::move(steps), std::move(sources), schema.population_vars().size());
  return ContingencyTable(std::vector<VarId>(keep.begin(), keep.end()), join.run());
}

ContingencyTable join_positive_ct(const Database& db, const LatticePoint& point, JoinCounter& counter) {
  std::vector<VarId> keep;
  for (VarId v : point.variables)
    if (!db.schema().variable(v).is_indicator()) keep.push_back(v);
  return join_positive_ct(db, point.relationships, keep, counter);
}

}  // namespace relct
