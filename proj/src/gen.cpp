#include "relct/gen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <unordered_set>

#include "json.hpp"

namespace relct {

namespace {

using Rng = std::mt19937_64;

/// Uniform integer in [0, n) by rejection, identical on every platform.
std::uint64_t below(Rng& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  while (true) {
    std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

/// Uniform double in [0, 1) from the top 53 bits.
double unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

constexpr Count kShuffleLimit = 1'000'000;

void check_attributes(const std::vector<GenAttribute>& attrs, const std::string& owner) {
  for (const auto& a : attrs) {
    if (a.domain_size < 2 || a.domain_size > kMaxDomainSize)
      throw Error("attribute " + owner + "." + a.name + " needs a domain size in [2, " +
                  std::to_string(kMaxDomainSize) + "]");
    if (!(a.noise >= 0.0 && a.noise <= 1.0)) throw Error("noise out of range for " + owner + "." + a.name);
  }
}

AttributeDef to_def(const GenAttribute& a) {
  AttributeDef def;
  def.name = a.name;
  for (std::size_t v = 1; v <= a.domain_size; ++v) def.domain.push_back(std::to_string(v));
  return def;
}

std::size_t entity_index(const GenConfig& config, const std::string& name) {
  for (std::size_t i = 0; i < config.entities.size(); ++i)
    if (config.entities[i].name == name) return i;
  throw Error("unknown entity type '" + name + "' in generator config");
}

/// Fills one attribute column. `source` yields the dependency's value for a row.
template <typename Source>
std::vector<Value> draw_column(Rng& rng, std::size_t rows, const GenAttribute& attr, Source source) {
  std::vector<Value> col(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    auto dep = source(r);
    if (dep && !(attr.noise > 0.0 && unit(rng) < attr.noise))
      col[r] = static_cast<Value>(*dep % attr.domain_size);
    else
      col[r] = static_cast<Value>(below(rng, attr.domain_size));
  }
  return col;
}

std::size_t find_attr(const std::vector<GenAttribute>& attrs, std::size_t before, const std::string& name,
                      const std::string& owner) {
  for (std::size_t i = 0; i < before; ++i)
    if (attrs[i].name == name) return i;
  throw Error("attribute " + owner + " depends on '" + name + "', which is not declared before it");
}

/// Sorted distinct pair indices in [0, total), exactly k of them.
std::vector<std::uint64_t> sample_pairs(Rng& rng, Count total, Count k) {
  std::vector<std::uint64_t> out;
  if (total <= kShuffleLimit) {
    std::vector<std::uint64_t> idx(total);
    std::iota(idx.begin(), idx.end(), std::uint64_t{0});
    for (Count i = 0; i < k; ++i) std::swap(idx[i], idx[i + below(rng, total - i)]);
    out.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
  } else {
    const bool complement = k > total / 2;
    const Count want = complement ? total - k : k;
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(want);
    std::vector<std::uint64_t> order;
    while (chosen.size() < want) {
      std::uint64_t p = below(rng, total);
      if (chosen.insert(p).second) order.push_back(p);
    }
    if (complement) {
      out.reserve(k);
      for (std::uint64_t p = 0; p < total; ++p)
        if (!chosen.count(p)) out.push_back(p);
    } else {
      out = std::move(order);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Count link_count(double density, Count n1, Count n2) {
  if (!(density >= 0.0 && density <= 1.0)) throw Error("density out of range [0, 1]");
  Count total = checked_mul(n1, n2);
  long double k = std::floor(static_cast<long double>(density) * static_cast<long double>(total));
  return std::min<Count>(total, static_cast<Count>(k));
}

Schema config_schema(const GenConfig& config) {
  std::vector<EntityType> entities;
  for (const auto& e : config.entities) {
    check_attributes(e.attributes, e.name);
    EntityType t;
    t.name = e.name;
    t.key_column = "id";
    for (const auto& a : e.attributes) t.attributes.push_back(to_def(a));
    entities.push_back(std::move(t));
  }
  std::vector<RelationshipType> rels;
  for (const auto& r : config.relationships) {
    check_attributes(r.attributes, r.name);
    RelationshipType t;
    t.name = r.name;
    t.endpoints[0] = Endpoint{entity_index(config, r.from.entity), r.from.label};
    t.endpoints[1] = Endpoint{entity_index(config, r.to.entity), r.to.label};
    for (const auto& a : r.attributes) t.attributes.push_back(to_def(a));
    rels.push_back(std::move(t));
  }
  return Schema(std::move(entities), std::move(rels));
}

Database generate(const GenConfig& config) {
  Schema schema = config_schema(config);
  Rng rng(config.seed);

  std::vector<DataTable> entity_tables;
  for (const auto& e : config.entities) {
    DataTable t;
    t.name = e.name;
    t.row_count = e.population;
    t.keys.reserve(e.population);
    for (Count i = 0; i < e.population; ++i) t.keys.push_back(e.name + "_" + std::to_string(i));
    for (std::size_t a = 0; a < e.attributes.size(); ++a) {
      const auto& attr = e.attributes[a];
      const std::vector<Value>* dep = nullptr;
      if (attr.depends_on) dep = &t.attributes[find_attr(e.attributes, a, *attr.depends_on, e.name + "." + attr.name)];
      t.attributes.push_back(draw_column(rng, t.row_count, attr, [&](std::size_t r) -> std::optional<Value> {
        if (!dep) return std::nullopt;
        return (*dep)[r];
      }));
    }
    entity_tables.push_back(std::move(t));
  }

  std::vector<DataTable> link_tables;
  for (std::size_t ri = 0; ri < config.relationships.size(); ++ri) {
    const auto& r = config.relationships[ri];
    const auto& type = schema.relationships()[ri];
    std::array<std::size_t, 2> ends{type.endpoints[0].entity, type.endpoints[1].entity};
    const Count n1 = entity_tables[ends[0]].row_count;
    const Count n2 = entity_tables[ends[1]].row_count;
    const Count k = link_count(r.density, n1, n2);

    DataTable t;
    t.name = r.name;
    t.row_count = k;
    for (std::uint64_t p : sample_pairs(rng, checked_mul(n1, n2), k)) {
      t.endpoints[0].push_back(static_cast<std::uint32_t>(p / n2));
      t.endpoints[1].push_back(static_cast<std::uint32_t>(p % n2));
    }
    for (std::size_t a = 0; a < r.attributes.size(); ++a) {
      const auto& attr = r.attributes[a];
      const std::string owner = r.name + "." + attr.name;
      const std::vector<Value>* dep = nullptr;
      int side = -1;
      if (attr.depends_on) {
        auto dot = attr.depends_on->find('.');
        if (dot == std::string::npos) {
          dep = &t.attributes[find_attr(r.attributes, a, *attr.depends_on, owner)];
        } else {
          std::string label = attr.depends_on->substr(0, dot);
          std::string name = attr.depends_on->substr(dot + 1);
          side = label == r.from.label ? 0 : label == r.to.label ? 1 : -1;
          if (side < 0) throw Error("attribute " + owner + " depends on unknown endpoint '" + label + "'");
          const auto& gen_entity = config.entities[ends[side]];
          dep = &entity_tables[ends[side]].attributes[find_attr(gen_entity.attributes, gen_entity.attributes.size(),
                                                                 name, owner)];
        }
      }
      t.attributes.push_back(draw_column(rng, t.row_count, attr, [&](std::size_t row) -> std::optional<Value> {
        if (!dep) return std::nullopt;
        return side < 0 ? (*dep)[row] : (*dep)[t.endpoints[side][row]];
      }));
    }
    link_tables.push_back(std::move(t));
  }
  return Database(std::move(schema), std::move(entity_tables), std::move(link_tables));
}

namespace {

struct PresetEntity {
  const char* name;
  double population;  // at scale 1
  std::vector<GenAttribute> attributes;
};

struct PresetRelationship {
  const char* name;
  GenEndpoint from;
  GenEndpoint to;
  double links;  // at scale 1
  std::vector<GenAttribute> attributes;
};

struct PresetShape {
  std::vector<PresetEntity> entities;
  std::vector<PresetRelationship> relationships;
};

GenAttribute attr(const char* name, std::size_t d) { return GenAttribute{name, d, std::nullopt, 0.0}; }
GenAttribute dep(const char* name, std::size_t d, const char* on, double noise) {
  return GenAttribute{name, d, std::string(on), noise};
}

// Populations and link counts at scale 1 are chosen so that total rows match
// the published size of each benchmark database.
const std::map<std::string, PresetShape, std::less<>>& preset_shapes() {
  static const std::map<std::string, PresetShape, std::less<>> shapes = {
      {"uw-like",
       {{{"Person", 278, {attr("position", 3), dep("phase", 3, "position", 0.3), attr("years", 4)}},
         {"Course", 132, {attr("level", 3)}}},
        {{"AdvisedBy", {"Person", "S"}, {"Person", "P"}, 113, {}},
         {"TaughtBy", {"Course", "C"}, {"Person", "P"}, 189, {dep("term", 3, "C.level", 0.4)}}}}},
      {"movielens-like",
       {{{"User", 941, {attr("age", 3), attr("gender", 2)}}, {"Movie", 1682, {attr("genre", 3)}}},
        {{"Rated", {"User", "U"}, {"Movie", "M"}, 71779, {dep("rating", 5, "M.genre", 0.5)}}}}},
      {"hepatitis-like",
       {{{"Patient", 500, {attr("sex", 2), attr("type", 2), dep("fibros", 3, "type", 0.3)}},
         {"Bio", 700, {attr("got", 3), dep("gpt", 3, "got", 0.3), attr("alb", 3)}},
         {"Inf", 200, {attr("dur", 4)}},
         {"Indis", 900, {attr("che", 3), dep("ttt", 3, "che", 0.4), attr("tcho", 3)}}},
        {{"Rel11", {"Bio", "B"}, {"Patient", "P"}, 3000, {}},
         {"Rel12", {"Inf", "I"}, {"Patient", "P"}, 200, {}},
         {"Rel13", {"Indis", "D"}, {"Patient", "P"}, 7427, {}}}}},
      {"financial-like",
       {{{"Client", 53690, {attr("gender", 2), attr("age", 4)}},
         {"Account", 45000, {attr("frequency", 3), dep("balance", 4, "frequency", 0.5)}},
         {"Loan", 6820, {attr("amount", 4), dep("status", 4, "amount", 0.4)}},
         {"District", 77, {attr("region", 4), attr("salary", 3)}}},
        {{"Disp", {"Client", "C"}, {"Account", "A"}, 68480, {attr("type", 2)}},
         {"InDistrict", {"Account", "A"}, {"District", "D"}, 45000, {}},
         {"HasLoan", {"Account", "A"}, {"Loan", "L"}, 6820, {dep("duration", 3, "L.amount", 0.5)}}}}},
      {"imdb-like",
       {{{"Movie", 3800, {attr("year", 4), attr("genre", 5), dep("country", 3, "genre", 0.5)}},
         {"Actor", 98000, {attr("gender", 2), attr("quality", 3)}},
         {"Director", 2200, {attr("quality", 3), dep("revenue", 3, "quality", 0.4)}},
         {"User", 6000, {attr("age", 3), dep("occupation", 4, "age", 0.5)}}},
        {{"CastIn", {"Movie", "M"}, {"Actor", "A"}, 138000, {dep("cast_num", 3, "A.quality", 0.5)}},
         {"DirectedBy", {"Movie", "M"}, {"Director", "D"}, 4000, {}},
         {"Rated", {"User", "U"}, {"Movie", "M"}, 811559, {dep("rating", 5, "M.genre", 0.5)}}}}},
      {"visualgenome-like",
       {{{"Image", 100000, {attr("scene", 4)}},
         {"Object", 1500000, {attr("category", 5), dep("size", 3, "category", 0.5)}},
         {"Region", 500000, {attr("shape", 3)}},
         {"Attribute", 50000, {attr("kind", 4)}},
         {"Predicate", 10000, {attr("type", 3)}}},
        {{"ImageObject", {"Image", "I"}, {"Object", "O"}, 1500000, {}},
         {"ImageRegion", {"Image", "I"}, {"Region", "R"}, 2000000, {}},
         {"RegionObject", {"Region", "R"}, {"Object", "O"}, 1300000, {}},
         {"ObjectAttribute", {"Object", "O"}, {"Attribute", "A"}, 3840000, {}},
         {"SubjectOf", {"Object", "O"}, {"Predicate", "P"}, 2000000, {}},
         {"ObjectPair", {"Object", "O"}, {"Object", "Q"}, 1500000, {}},
         {"RegionAttribute", {"Region", "R"}, {"Attribute", "A"}, 1000000, {}},
         {"ImagePredicate", {"Image", "I"}, {"Predicate", "P"}, 533273, {}}}}},
  };
  return shapes;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [name, shape] : preset_shapes()) out.push_back(name);
  return out;
}

GenConfig preset(std::string_view name, double scale, std::uint64_t seed) {
  auto it = preset_shapes().find(name);
  if (it == preset_shapes().end()) throw Error("unknown preset '" + std::string(name) + "'");
  if (!(scale > 0.0 && scale <= 1.0)) throw Error("preset scale must be in (0, 1]");
  const PresetShape& shape = it->second;

  GenConfig config;
  config.seed = seed;
  config.preset = std::string(name);
  std::map<std::string, Count> population;
  for (const auto& e : shape.entities) {
    Count n = std::max<Count>(1, static_cast<Count>(std::llround(e.population * scale)));
    population[e.name] = n;
    config.entities.push_back(GenEntity{e.name, n, e.attributes});
  }
  for (const auto& r : shape.relationships) {
    double pairs = static_cast<double>(population.at(r.from.entity)) * static_cast<double>(population.at(r.to.entity));
    double density = std::min(1.0, r.links * scale / pairs);
    config.relationships.push_back(GenRelationship{r.name, r.from, r.to, density, r.attributes});
  }
  return config;
}

namespace {

using nlohmann::json;

std::vector<GenAttribute> attrs_from_json(const json& j) {
  std::vector<GenAttribute> out;
  if (!j.contains("attributes")) return out;
  for (const auto& a : j.at("attributes")) {
    GenAttribute g;
    g.name = a.at("name").get<std::string>();
    g.domain_size = a.at("domain_size").get<std::size_t>();
    if (a.contains("depends_on")) g.depends_on = a.at("depends_on").get<std::string>();
    g.noise = a.value("noise", 0.0);
    out.push_back(std::move(g));
  }
  return out;
}

json attrs_to_json(const std::vector<GenAttribute>& attrs) {
  json out = json::array();
  for (const auto& a : attrs) {
    json j{{"name", a.name}, {"domain_size", a.domain_size}};
    if (a.depends_on) {
      j["depends_on"] = *a.depends_on;
      j["noise"] = a.noise;
    }
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace

GenConfig parse_gen_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(std::string("generator config: ") + e.what());
  }
  try {
    if (j.contains("preset")) {
      GenConfig c = preset(j.at("preset").get<std::string>(), j.value("scale", 0.1), j.value("seed", 0ull));
      return c;
    }
    GenConfig c;
    c.seed = j.value("seed", 0ull);
    if (j.contains("preset_origin")) c.preset = j.at("preset_origin").get<std::string>();
    for (const auto& e : j.at("entities"))
      c.entities.push_back(GenEntity{e.at("name").get<std::string>(), e.at("population").get<Count>(),
                                     attrs_from_json(e)});
    for (const auto& r : j.value("relationships", json::array())) {
      const auto& ends = r.at("endpoints");
      if (ends.size() != 2) throw Error("relationship needs exactly two endpoints");
      GenRelationship g;
      g.name = r.at("name").get<std::string>();
      g.from = GenEndpoint{ends[0].at(0).get<std::string>(), ends[0].at(1).get<std::string>()};
      g.to = GenEndpoint{ends[1].at(0).get<std::string>(), ends[1].at(1).get<std::string>()};
      g.density = r.at("density").get<double>();
      g.attributes = attrs_from_json(r);
      c.relationships.push_back(std::move(g));
    }
    return c;
  } catch (const json::exception& e) {
    throw Error(std::string("generator config: ") + e.what());
  }
}

std::string gen_config_json(const GenConfig& config) {
  json j;
  j["seed"] = config.seed;
  if (config.preset) j["preset_origin"] = *config.preset;
  j["entities"] = json::array();
  for (const auto& e : config.entities)
    j["entities"].push_back({{"name", e.name}, {"population", e.population}, {"attributes", attrs_to_json(e.attributes)}});
  j["relationships"] = json::array();
  for (const auto& r : config.relationships)
    j["relationships"].push_back({{"name", r.name},
                                  {"endpoints", json::array({json::array({r.from.entity, r.from.label}),
                                                             json::array({r.to.entity, r.to.label})})},
                                  {"density", r.density},
                                  {"attributes", attrs_to_json(r.attributes)}});
  return j.dump(2);
}

}  // namespace relct
