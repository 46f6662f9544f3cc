#include "relct/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace relct {

RunOutput run_benchmark(const Database& db, const RunOptions& options) {
  const Schema& schema = db.schema();
  ComponentClock clock;
  RunOutput out;
  StrategyReport& rep = out.report;
  rep.strategy = std::string(to_string(options.strategy));
  rep.database = options.database_label;
  char fp[17];
  std::snprintf(fp, sizeof fp, "%016llx", static_cast<unsigned long long>(database_fingerprint(db)));
  rep.db_fingerprint = fp;
  rep.seed = options.search.seed;
  rep.max_chain_length = options.max_chain_length;
  rep.max_parents = options.search.max_parents;
  rep.ess = options.params.ess;

  Deadline deadline = options.budget_s ? Deadline(std::chrono::duration<double>(*options.budget_s)) : Deadline();

  std::optional<RelationshipLattice> lattice;
  double metadata_wall_ms = 0.0;
  {
    auto t0 = std::chrono::steady_clock::now();
    auto scope = charge(&clock, Component::MetaData);
    auto vars = derive_variables(schema.entities(), schema.relationships(), schema.population_vars());
    if (vars.size() != schema.variables().size()) throw Error("variable derivation is inconsistent with the schema");
    lattice.emplace(build_lattice(schema, options.max_chain_length));
    metadata_wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
  rep.lattice_points = lattice->points().size();

  CountCache cache(options.max_ct_rows);
  CountProvider provider(options.strategy, CountingContext{db, *lattice, &clock, deadline}, cache);
  out.trace.record_entries = options.record_trace_entries;
  FamilyScorer scorer(provider, options.params, out.trace);

  bool prepared = false;
  try {
    provider.prepare();
    prepared = true;
    rep.prepare_join_count = cache.stats().joins.joins;
    LearnResult learned = learn_and_join(*lattice, scorer, options.search);
    out.model = std::move(learned.model);
    rep.final_score = learned.score;
    rep.nodes = out.model.nodes().size();
    rep.edges = out.model.edge_count();
    rep.mp_per_node = mean_parents_per_node(out.model);
  } catch (const BudgetExceeded& e) {
    rep.partial = true;
    rep.partial_reason = e.what();
  } catch (const MemoryCapExceeded& e) {
    rep.partial = true;
    rep.partial_reason = e.what();
  }

  const auto& stats = cache.stats();
  rep.metadata_ms = clock.ms(Component::MetaData) + options.metadata_offset_ms;
  rep.positive_ct_ms = clock.ms(Component::PositiveCt);
  rep.negative_ct_ms = clock.ms(Component::NegativeCt);
  rep.counting_ms = metadata_wall_ms + provider.counting_wall_ms() + options.metadata_offset_ms;
  rep.join_count = stats.joins.joins;
  if (!prepared) rep.prepare_join_count = rep.join_count;
  rep.search_join_count = rep.join_count - std::min(rep.join_count, rep.prepare_join_count);
  rep.moebius_runs = stats.moebius_runs;
  rep.peak_total_rows = stats.peak_total_rows;
  rep.lattice_ct_rows = cache.lattice_complete_rows();
  rep.family_ct_rows = cache.family_rows_inserted();
  rep.cache_hits = stats.hits;
  rep.cache_misses = stats.misses;
  rep.evictions = stats.evictions;
  rep.distinct_families = out.trace.distinct_families.size();
  rep.families_requested = out.trace.families_requested;
  rep.moves_accepted = out.trace.moves_accepted;
  return out;
}

namespace {

using nlohmann::ordered_json;

template <typename T>
void read(const ordered_json& j, const char* key, T& field) {
  if (j.contains(key)) field = j.at(key).get<T>();
}

}  // namespace

std::string report_json(const StrategyReport& r) {
  ordered_json j;
  j["report_version"] = r.report_version;
  j["strategy"] = r.strategy;
  j["database"] = r.database;
  j["db_fingerprint"] = r.db_fingerprint;
  j["seed"] = r.seed;
  j["max_chain_length"] = r.max_chain_length;
  j["max_parents"] = r.max_parents;
  j["ess"] = r.ess;
  j["metadata_ms"] = r.metadata_ms;
  j["positive_ct_ms"] = r.positive_ct_ms;
  j["negative_ct_ms"] = r.negative_ct_ms;
  j["counting_ms"] = r.counting_ms;
  j["join_count"] = r.join_count;
  j["prepare_join_count"] = r.prepare_join_count;
  j["search_join_count"] = r.search_join_count;
  j["moebius_runs"] = r.moebius_runs;
  j["peak_total_rows"] = r.peak_total_rows;
  j["lattice_ct_rows"] = r.lattice_ct_rows;
  j["family_ct_rows"] = r.family_ct_rows;
  j["cache_hits"] = r.cache_hits;
  j["cache_misses"] = r.cache_misses;
  j["evictions"] = r.evictions;
  j["distinct_families"] = r.distinct_families;
  j["families_requested"] = r.families_requested;
  j["moves_accepted"] = r.moves_accepted;
  j["lattice_points"] = r.lattice_points;
  j["nodes"] = r.nodes;
  j["edges"] = r.edges;
  j["final_score"] = r.final_score;
  j["mp_per_node"] = r.mp_per_node;
  j["partial"] = r.partial;
  j["partial_reason"] = r.partial_reason;
  return j.dump(2) + "\n";
}

StrategyReport parse_report(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const ordered_json::exception& e) {
    throw Error(std::string("malformed report: ") + e.what());
  }
  StrategyReport r;
  try {
    read(j, "report_version", r.report_version);
    if (r.report_version != 1) throw Error("unsupported report_version " + std::to_string(r.report_version));
    read(j, "strategy", r.strategy);
    read(j, "database", r.database);
    read(j, "db_fingerprint", r.db_fingerprint);
    read(j, "seed", r.seed);
    read(j, "max_chain_length", r.max_chain_length);
    read(j, "max_parents", r.max_parents);
    read(j, "ess", r.ess);
    read(j, "metadata_ms", r.metadata_ms);
    read(j, "positive_ct_ms", r.positive_ct_ms);
    read(j, "negative_ct_ms", r.negative_ct_ms);
    read(j, "counting_ms", r.counting_ms);
    read(j, "join_count", r.join_count);
    read(j, "prepare_join_count", r.prepare_join_count);
    read(j, "search_join_count", r.search_join_count);
    read(j, "moebius_runs", r.moebius_runs);
    read(j, "peak_total_rows", r.peak_total_rows);
    read(j, "lattice_ct_rows", r.lattice_ct_rows);
    read(j, "family_ct_rows", r.family_ct_rows);
    read(j, "cache_hits", r.cache_hits);
    read(j, "cache_misses", r.cache_misses);
    read(j, "evictions", r.evictions);
    read(j, "distinct_families", r.distinct_families);
    read(j, "families_requested", r.families_requested);
    read(j, "moves_accepted", r.moves_accepted);
    read(j, "lattice_points", r.lattice_points);
    read(j, "nodes", r.nodes);
    read(j, "edges", r.edges);
    read(j, "final_score", r.final_score);
    read(j, "mp_per_node", r.mp_per_node);
    read(j, "partial", r.partial);
    read(j, "partial_reason", r.partial_reason);
  } catch (const ordered_json::exception& e) {
    throw Error(std::string("malformed report: ") + e.what());
  }
  return r;
}

namespace {

const StrategyReport* find_complete(const std::vector<StrategyReport>& reports, const char* strategy) {
  for (const auto& r : reports)
    if (r.strategy == strategy && !r.partial) return &r;
  return nullptr;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << v;
  return s.str();
}

}  // namespace

Comparison compare(const std::vector<StrategyReport>& reports) {
  if (reports.size() < 2) throw Error("compare needs at least two reports");
  const auto& first = reports.front();
  for (const auto& r : reports) {
    if (r.db_fingerprint != first.db_fingerprint) throw Error("mismatched inputs: reports are on different databases");
    if (r.seed != first.seed || r.max_parents != first.max_parents || r.max_chain_length != first.max_chain_length ||
        r.ess != first.ess)
      throw Error("mismatched inputs: reports use different search parameters");
  }

  Comparison c;
  c.reports = reports;
  const StrategyReport* p = find_complete(reports, "precount");
  const StrategyReport* o = find_complete(reports, "ondemand");
  const StrategyReport* h = find_complete(reports, "hybrid");
  if (p && h) {
    c.flags.emplace_back("join_count(precount) == join_count(hybrid)", p->join_count == h->join_count);
    c.flags.emplace_back("peak_total_rows(precount) >= peak_total_rows(hybrid)",
                         p->peak_total_rows >= h->peak_total_rows);
    c.flags.emplace_back("negative_ct_ms(precount) >= negative_ct_ms(hybrid)", p->negative_ct_ms >= h->negative_ct_ms);
    c.flags.emplace_back("family ct rows exceed global ct rows (inversion)", h->family_ct_rows > p->lattice_ct_rows);
  }
  if (o && h) c.flags.emplace_back("join_count(ondemand) >= join_count(hybrid)", o->join_count >= h->join_count);
  std::vector<const StrategyReport*> complete;
  for (const auto& r : reports)
    if (!r.partial) complete.push_back(&r);
  if (complete.size() >= 2) {
    bool equal = true;
    for (const auto* r : complete) equal = equal && std::fabs(r->final_score - complete.front()->final_score) <= 1e-9;
    c.flags.emplace_back("final_score equal within 1e-9", equal);
  }

  struct Metric {
    const char* name;
    double (*get)(const StrategyReport&);
  };
  static const Metric metrics[] = {
      {"metadata_ms", [](const StrategyReport& r) { return r.metadata_ms; }},
      {"positive_ct_ms", [](const StrategyReport& r) { return r.positive_ct_ms; }},
      {"negative_ct_ms", [](const StrategyReport& r) { return r.negative_ct_ms; }},
      {"counting_ms", [](const StrategyReport& r) { return r.counting_ms; }},
      {"join_count", [](const StrategyReport& r) { return static_cast<double>(r.join_count); }},
      {"peak_total_rows", [](const StrategyReport& r) { return static_cast<double>(r.peak_total_rows); }},
      {"lattice_ct_rows", [](const StrategyReport& r) { return static_cast<double>(r.lattice_ct_rows); }},
      {"family_ct_rows", [](const StrategyReport& r) { return static_cast<double>(r.family_ct_rows); }},
      {"distinct_families", [](const StrategyReport& r) { return static_cast<double>(r.distinct_families); }},
      {"final_score", [](const StrategyReport& r) { return r.final_score; }},
      {"mp_per_node", [](const StrategyReport& r) { return r.mp_per_node; }},
  };

  std::ostringstream t;
  t << std::left << std::setw(20) << "metric";
  for (const auto& r : reports) t << std::right << std::setw(26) << (r.strategy + (r.partial ? " (partial)" : ""));
  t << '\n';
  for (const auto& m : metrics) {
    t << std::left << std::setw(20) << m.name;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      double v = m.get(reports[i]);
      std::string cell = fmt(v);
      if (i > 0) cell += " (" + std::string(v - m.get(first) >= 0 ? "+" : "") + fmt(v - m.get(first)) + ")";
      t << std::right << std::setw(26) << cell;
    }
    t << '\n';
  }
  for (const auto& [name, ok] : c.flags) t << (ok ? "[true]  " : "[false] ") << name << '\n';
  c.table = t.str();
  return c;
}

std::string dump_ct(const Database& db, const DumpTarget& target, StrategyKind strategy,
                    std::size_t max_chain_length) {
  const Schema& schema = db.schema();
  RelationshipLattice lattice = build_lattice(schema, max_chain_length);
  CountCache cache;
  CountProvider provider(strategy, CountingContext{db, lattice, nullptr, Deadline()}, cache);

  if (target.family) {
    FamilySpec family = parse_family(schema, *target.family);
    if (!find_family_lattice_point(schema, family, lattice))
      throw Error("unknown family: no lattice point covers " + *target.family);
    provider.prepare();
    return dump_ct_csv(schema, *provider.family_ct(family));
  }
  if (target.point.empty()) throw Error("dump target needs a family or a lattice point");
  RelSet rels = 0;
  for (const auto& name : target.point) {
    auto r = schema.find_relationship(name);
    if (!r) throw Error("unknown relationship '" + name + "'");
    rels |= RelSet{1} << *r;
  }
  const LatticePoint* point = lattice.find(rels);
  if (!point) throw Error("relationships do not form a lattice point");
  provider.prepare();
  return dump_ct_csv(schema, provider.point_ct(*point));
}

}  // namespace relct
