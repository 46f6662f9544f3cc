// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "relct/bench.hpp"
#include "relct/gen.hpp"
#include "support.hpp"

using namespace relct;
using Clock = std::chrono::steady_clock;

namespace {

constexpr int kOracleDatabases = 200;
constexpr double kOracleSeconds = 60.0;
constexpr int kEquivalenceDatabases = 50;
constexpr double kEquivalenceSeconds = 300.0;
constexpr double kScoreTolerance = 1e-9;
constexpr int kBdeuTables = 1000;
constexpr double kBdeuTolerance = 1e-9;
constexpr double kImdbScale = 0.05;
constexpr double kHepatitisScale = 0.1;
constexpr double kMovielensScale = 0.1;
constexpr double kJoinRatio = 2.0;
constexpr std::size_t kMinRelationalFamilies = 30;
constexpr double kPeakRatio = 1.5;
constexpr double kNegativeTimeRatio = 2.0;
constexpr double kNegativeTimeBudget = 60.0;
constexpr double kMaxMoebiusSlope = 1.5;
constexpr double kMinMoebiusRange = 16.0;
constexpr double kMoebiusSeconds = 120.0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

/// Normalization violations seen anywhere; reported under criterion 3.
struct NormalizationLog {
  std::size_t checked = 0;
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok && failures.size() < 5) failures.push_back(what);
  }
};

/// Largest row bound V^C and family-table bound per database, with V the
/// largest cardinality (N/A included) among the variables in question.
struct BoundLog {
  std::size_t checked = 0;
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok && failures.size() < 5) failures.push_back(what);
  }
};

NormalizationLog g_norm;
BoundLog g_bounds;

Count max_cardinality(const Schema& s, const std::vector<VarId>& vars) {
  Count v = 1;
  for (VarId x : vars) v = std::max<Count>(v, s.cardinality(x));
  return v;
}

void check_positive_totals(const Database& db, const std::string& tag) {
  const Schema& s = db.schema();
  for (std::size_t r = 0; r < s.num_relationships(); ++r) {
    JoinCounter joins;
    ContingencyTable ct = join_positive_ct(db, RelSet{1} << r, s.relationship_attributes(r), joins);
    g_norm.expect(ct.total() == db.link_table(r).row_count, tag + ": positive total of " + s.relationships()[r].name);
  }
}

void check_point_bound(const Schema& s, const LatticePoint& point, const ContingencyTable& ct, const std::string& tag) {
  SizeBound b = estimate_ct_size_precount(max_cardinality(s, point.variables), point.variables.size());
  g_bounds.expect(b.saturated || ct.size() <= b.value, tag + ": lattice rows exceed V^C");
}

void check_family_bound(const Schema& s, const StrategyReport& r, const std::string& tag) {
  std::vector<VarId> all;
  for (VarId v = 0; v < s.variables().size(); ++v) all.push_back(v);
  if (all.size() < 2) return;
  Count k = std::min<Count>(r.max_parents, all.size() - 1);
  SizeBound b = estimate_ct_size_ondemand(max_cardinality(s, all), all.size(), k);
  g_bounds.expect(b.saturated || r.family_ct_rows <= b.value,
                  tag + ": family rows " + std::to_string(r.family_ct_rows) + " exceed " + std::to_string(b.value));
}

std::vector<VarId> with_needed_indicators(const Schema& s, std::vector<VarId> vars) {
  for (VarId v : std::vector<VarId>(vars))
    if (s.variable(v).kind == VarKind::RelationshipAttribute) vars.push_back(s.indicator(s.variable(v).owner));
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

// 1 and part of 3
Outcome oracle_equivalence() {
  Outcome out;
  auto t0 = Clock::now();
  std::mt19937_64 rng(20240501);
  std::size_t tables = 0;
  for (int i = 0; i < kOracleDatabases; ++i) {
    Database db = generate(testing::random_micro_config(rng));
    const Schema& s = db.schema();
    std::string tag = "oracle db " + std::to_string(i);
    check_positive_totals(db, tag);
    auto lattice = build_lattice(s);
    testing::DatabaseSource source(db);
    for (const auto& point : lattice.points()) {
      ContingencyTable ct = moebius_join(s, point.variables, point.population_vars, source);
      ++tables;
      if (!(ct == testing::brute_force_ct(db, point.variables, point.population_vars)))
        out.fail(tag + ": complete table differs from enumeration");
      g_norm.expect(ct.total() == db.grounding_count(point.population_vars), tag + ": complete total");
      check_point_bound(s, point, ct, tag);

      std::vector<VarId> subset;
      for (VarId v : point.variables)
        if (rng() % 2) subset.push_back(v);
      subset = with_needed_indicators(s, subset);
      ContingencyTable part = moebius_join(s, subset, point.population_vars, source);
      ++tables;
      if (!(part == testing::brute_force_ct(db, subset, point.population_vars)))
        out.fail(tag + ": family table differs from enumeration");
      g_norm.expect(part.total() == db.grounding_count(point.population_vars), tag + ": family total");
    }
  }
  double secs = seconds_since(t0);
  if (secs >= kOracleSeconds) out.fail("took " + std::to_string(secs) + " s");
  if (out.pass) {
    std::ostringstream d;
    d << kOracleDatabases << " databases, " << tables << " tables exact, " << secs << " s";
    out.detail = d.str();
  }
  return out;
}

/// Distinct families of a trace recorded with entries, as "child <- parents" text.
std::set<std::string> requested_families(const SearchTrace& t) {
  std::set<std::string> out;
  for (const auto& e : t.entries) out.insert(e.family);
  return out;
}

std::string trace_text(const SearchTrace& t) {
  std::ostringstream s;
  t.write_jsonl(s);
  return s.str();
}

// 2 and part of 3 and 5
Outcome strategy_equivalence() {
  Outcome out;
  auto t0 = Clock::now();
  std::mt19937_64 rng(777);
  std::size_t families = 0;
  for (int i = 0; i < kEquivalenceDatabases; ++i) {
    Database db = generate(testing::random_micro_config(rng, 2000));
    const Schema& s = db.schema();
    std::string tag = "equivalence db " + std::to_string(i);
    check_positive_totals(db, tag);

    std::vector<RunOutput> runs;
    for (auto kind : {StrategyKind::Precount, StrategyKind::Ondemand, StrategyKind::Hybrid}) {
      RunOptions opts;
      opts.strategy = kind;
      opts.search.seed = static_cast<std::uint64_t>(i);
      opts.search.restarts = 1;
      opts.search.max_parents = 1 + i % 3;
      opts.record_trace_entries = true;
      runs.push_back(run_benchmark(db, opts));
      check_family_bound(s, runs.back().report, tag);
    }
    const std::string base = trace_text(runs[0].trace);
    for (std::size_t k = 1; k < runs.size(); ++k) {
      if (trace_text(runs[k].trace) != base) out.fail(tag + ": traces differ");
      if (std::fabs(runs[k].report.final_score - runs[0].report.final_score) > kScoreTolerance)
        out.fail(tag + ": final scores differ");
      if (!(runs[k].model == runs[0].model)) out.fail(tag + ": models differ");
    }

    // Every requested family's table, recomputed under each strategy.
    auto lattice = build_lattice(s);
    std::vector<std::unique_ptr<CountCache>> caches;
    std::vector<std::unique_ptr<CountProvider>> providers;
    for (auto kind : {StrategyKind::Precount, StrategyKind::Ondemand, StrategyKind::Hybrid}) {
      caches.push_back(std::make_unique<CountCache>());
      providers.push_back(std::make_unique<CountProvider>(kind, CountingContext{db, lattice}, *caches.back()));
      providers.back()->prepare();
    }
    for (const auto& text : requested_families(runs[0].trace)) {
      FamilySpec f = parse_family(s, text);
      const auto& point = family_lattice_point(s, f, lattice);
      auto p = providers[0]->family_ct(f);
      ++families;
      if (!(*providers[1]->family_ct(f) == *p) || !(*providers[2]->family_ct(f) == *p))
        out.fail(tag + ": family tables differ for " + text);
      g_norm.expect(p->total() == db.grounding_count(point.population_vars), tag + ": family total " + text);
    }
    for (const auto* point : testing::all_points(lattice)) {
      ContingencyTable ct = providers[0]->point_ct(*point);
      g_norm.expect(ct.total() == db.grounding_count(point->population_vars), tag + ": point total");
      if (!point->is_entity_point()) check_point_bound(s, *point, ct, tag);
    }
  }
  double secs = seconds_since(t0);
  if (secs >= kEquivalenceSeconds) out.fail("took " + std::to_string(secs) + " s");
  if (out.pass) {
    std::ostringstream d;
    d << kEquivalenceDatabases << " databases x 3 strategies, " << families << " families identical, " << secs
      << " s";
    out.detail = d.str();
  }
  return out;
}

// 4
Outcome bdeu_oracle() {
  Outcome out;
  std::mt19937_64 rng(4242);
  const double ess_values[] = {0.1, 1.0, 10.0};
  double worst = 0.0;
  for (int i = 0; i < kBdeuTables; ++i) {
    FamilyCounts c;
    c.r_i = 2 + rng() % 4;
    c.q_i = 1 + rng() % 12;
    std::size_t observed = 1 + rng() % c.q_i;
    // Mix of magnitudes so small and large counts both appear.
    Count cap = (i % 4 == 0) ? 10 : (i % 4 == 1 ? 1000 : 1000000);
    for (std::size_t j = 0; j < observed; ++j) {
      std::vector<Count> row(c.r_i);
      Count total = 0;
      for (auto& x : row) total += x = rng() % (cap + 1);
      c.n_ij.push_back(total);
      c.n_ijk.push_back(row);
    }
    double ess = ess_values[i % 3];
    double err = std::fabs(bdeu_family(c, {ess, 0.0}).value - testing::bdeu_mpfr(c, ess));
    worst = std::max(worst, err);
  }
  if (worst > kBdeuTolerance) out.fail("max abs error " + std::to_string(worst));

  Database db = testing::capa_salary_university();
  const Schema& s = db.schema();
  auto lattice = build_lattice(s);
  CountCache cache;
  CountProvider provider(StrategyKind::Precount, CountingContext{db, lattice}, cache);
  provider.prepare();
  FamilySpec fam = parse_family(s, "salary(P,S) <- RA(P,S), capa(P,S)");
  auto ct = provider.family_ct(fam);
  VarId ra = s.variable_by_name("RA(P,S)");
  VarId capa = s.variable_by_name("capa(P,S)");
  VarId salary = s.variable_by_name("salary(P,S)");
  std::string key(3, '\0');
  key[*ct->column_of(ra)] = static_cast<char>(kTrue);
  key[*ct->column_of(capa)] = static_cast<char>(s.parse_value(capa, "4"));
  key[*ct->column_of(salary)] = static_cast<char>(s.parse_value(salary, "HIGH"));
  Count worked = ct->count(key);
  if (worked != 5) out.fail("worked count is " + std::to_string(worked) + ", expected 5");
  if (out.pass) {
    std::ostringstream d;
    d << kBdeuTables << " tables, max abs error " << worst << "; worked count N_ijk = " << worked;
    out.detail = d.str();
  }
  return out;
}

RunOutput run_preset(const Database& db, StrategyKind kind, const std::string& label,
                     std::optional<double> budget = std::nullopt) {
  RunOptions opts;
  opts.strategy = kind;
  opts.database_label = label;
  opts.search.seed = 1;
  opts.budget_s = budget;
  opts.record_trace_entries = true;
  return run_benchmark(db, opts);
}

struct PresetRuns {
  Database db;
  RunOutput p, o, h;
};

PresetRuns run_all(const std::string& name, double scale) {
  Database db = generate(preset(name, scale, 1));
  RunOutput p = run_preset(db, StrategyKind::Precount, name);
  RunOutput o = run_preset(db, StrategyKind::Ondemand, name);
  RunOutput h = run_preset(db, StrategyKind::Hybrid, name);
  return PresetRuns{std::move(db), std::move(p), std::move(o), std::move(h)};
}

// 5, after the database-level checks gathered above plus the presets.
Outcome size_bounds(const std::vector<const PresetRuns*>& presets) {
  for (const auto* runs : presets) {
    const Schema& s = runs->db.schema();
    auto lattice = build_lattice(s);
    CountCache cache;
    CountProvider provider(StrategyKind::Precount, CountingContext{runs->db, lattice}, cache);
    provider.prepare();
    for (const auto& point : lattice.points())
      check_point_bound(s, point, *cache.complete(point.relationships), runs->p.report.database);
    for (const auto* r : {&runs->p, &runs->o, &runs->h}) check_family_bound(s, r->report, r->report.database);
  }
  Outcome out;
  if (!g_bounds.failures.empty()) out.fail(g_bounds.failures.front());
  if (out.pass) out.detail = std::to_string(g_bounds.checked) + " bounds hold";
  return out;
}

std::size_t relational_families(const Database& db, const SearchTrace& trace) {
  auto lattice = build_lattice(db.schema());
  std::size_t n = 0;
  for (const auto& text : requested_families(trace))
    if (!family_lattice_point(db.schema(), parse_family(db.schema(), text), lattice).is_entity_point()) ++n;
  return n;
}

// 6
Outcome join_accounting(const PresetRuns& imdb) {
  Outcome out;
  const auto& p = imdb.p.report;
  const auto& o = imdb.o.report;
  const auto& h = imdb.h.report;
  std::size_t families = relational_families(imdb.db, imdb.h.trace);
  if (p.partial || o.partial || h.partial) out.fail("a run was partial");
  if (h.join_count != p.join_count)
    out.fail("join_count hybrid " + std::to_string(h.join_count) + " != precount " + std::to_string(p.join_count));
  if (static_cast<double>(o.join_count) < kJoinRatio * static_cast<double>(h.join_count))
    out.fail("join_count ondemand " + std::to_string(o.join_count) + " < 2x hybrid " + std::to_string(h.join_count));
  if (families < kMinRelationalFamilies) out.fail("only " + std::to_string(families) + " relational families");
  std::ostringstream d;
  d << "imdb-like@" << kImdbScale << ": joins P=" << p.join_count << " H=" << h.join_count << " O=" << o.join_count
    << ", " << families << " relational families";
  if (out.pass) out.detail = d.str();
  return out;
}

// 7
Outcome memory_direction(const PresetRuns& hepatitis, const PresetRuns& imdb, const PresetRuns& movielens) {
  Outcome out;
  std::ostringstream d;
  for (const auto* runs : {&hepatitis, &imdb}) {
    const auto& p = runs->p.report;
    const auto& h = runs->h.report;
    double ratio = static_cast<double>(p.peak_total_rows) / std::max<double>(1.0, static_cast<double>(h.peak_total_rows));
    d << p.database << " peak P/H=" << ratio << "; ";
    if (static_cast<double>(p.peak_total_rows) < kPeakRatio * static_cast<double>(h.peak_total_rows))
      out.fail(p.database + ": peak rows precount " + std::to_string(p.peak_total_rows) + " < 1.5x hybrid " +
               std::to_string(h.peak_total_rows));
  }
  const auto& mp = movielens.p.report;
  const auto& mh = movielens.h.report;
  bool inversion = mh.family_ct_rows > mp.lattice_ct_rows;
  d << "movielens-like family rows " << mh.family_ct_rows << " vs lattice rows " << mp.lattice_ct_rows
    << (inversion ? " (inversion present)" : " (no inversion)");
  if (out.pass) out.detail = d.str();
  return out;
}

// 8
Outcome negative_time_direction() {
  Outcome out;
  Database db = generate(preset("hepatitis-like", kHepatitisScale, 1));
  RunOutput p = run_preset(db, StrategyKind::Precount, "hepatitis-like", kNegativeTimeBudget);
  RunOutput h = run_preset(db, StrategyKind::Hybrid, "hepatitis-like", kNegativeTimeBudget);
  if (p.report.partial) out.fail("precount exceeded the budget");
  if (h.report.partial) out.fail("hybrid exceeded the budget");
  double ratio = p.report.negative_ct_ms / std::max(1e-9, h.report.negative_ct_ms);
  if (p.report.negative_ct_ms < kNegativeTimeRatio * h.report.negative_ct_ms)
    out.fail("negative ct ms precount " + std::to_string(p.report.negative_ct_ms) + " < 2x hybrid " +
             std::to_string(h.report.negative_ct_ms));
  if (out.pass) {
    std::ostringstream d;
    d << "hepatitis-like@" << kHepatitisScale << ": negative ms P=" << p.report.negative_ct_ms
      << " H=" << h.report.negative_ct_ms << " (x" << ratio << ")";
    out.detail = d.str();
  }
  return out;
}

/// Serves positive counts by projection from tables computed once, so timing
/// covers only the completion step.
class MemoSource : public PositiveSource {
 public:
  explicit MemoSource(const Database& db) : db_(db) {}
  ContingencyTable positive(RelSet component, std::span<const VarId> keep) override {
    auto it = positive_.find(component);
    if (it == positive_.end()) {
      JoinCounter joins;
      auto all = applicable_variables(db_.schema(), component);
      std::vector<VarId> attrs;
      for (VarId v : all)
        if (!db_.schema().variable(v).is_indicator()) attrs.push_back(v);
      it = positive_.emplace(component, join_positive_ct(db_, component, attrs, joins)).first;
    }
    return project(it->second, keep);
  }
  ContingencyTable entity(PopVarId pv, std::span<const VarId> keep) override {
    auto it = entity_.find(pv);
    if (it == entity_.end()) it = entity_.emplace(pv, entity_ct(db_, pv, db_.schema().entity_variables(pv))).first;
    return project(it->second, keep);
  }

 private:
  const Database& db_;
  std::map<RelSet, ContingencyTable> positive_;
  std::map<PopVarId, ContingencyTable> entity_;
};

// 9
Outcome moebius_scaling() {
  Outcome out;
  auto t0 = Clock::now();
  std::vector<double> log_r, log_t;
  std::vector<std::pair<std::size_t, double>> points;
  for (std::size_t d : {8, 10, 12, 14, 16, 18, 20, 22}) {
    GenConfig c;
    c.seed = d;
    c.entities = {GenEntity{"A", 600, {GenAttribute{"x", d, {}, 0.0}}},
                  GenEntity{"B", 600, {GenAttribute{"y", d, {}, 0.0}}},
                  GenEntity{"C", 40, {GenAttribute{"z", 2, {}, 0.0}}}};
    c.relationships = {GenRelationship{"R", {"A", "U"}, {"B", "V"}, 0.3, {GenAttribute{"w", d, {}, 0.0}}},
                       GenRelationship{"Q", {"B", "V"}, {"C", "W"}, 0.2, {}}};
    Database db = generate(c);
    const Schema& s = db.schema();
    auto lattice = build_lattice(s);
    const LatticePoint* point = lattice.find(0b11);
    MemoSource source(db);
    ContingencyTable ct = moebius_join(s, point->variables, point->population_vars, source);
    double best = 1e300;
    for (int rep = 0; rep < 7; ++rep) {
      auto t = Clock::now();
      ContingencyTable again = moebius_join(s, point->variables, point->population_vars, source);
      best = std::min(best, seconds_since(t));
      if (again.size() != ct.size()) out.fail("non-deterministic output");
    }
    points.emplace_back(ct.size(), best);
    log_r.push_back(std::log(static_cast<double>(ct.size())));
    log_t.push_back(std::log(best));
  }
  double range = static_cast<double>(points.back().first) / static_cast<double>(points.front().first);
  double n = static_cast<double>(log_r.size());
  double mr = 0, mt = 0;
  for (std::size_t i = 0; i < log_r.size(); ++i) mr += log_r[i] / n, mt += log_t[i] / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < log_r.size(); ++i) {
    sxy += (log_r[i] - mr) * (log_t[i] - mt);
    sxx += (log_r[i] - mr) * (log_r[i] - mr);
  }
  double slope = sxy / sxx;
  double secs = seconds_since(t0);
  if (range < kMinMoebiusRange) out.fail("output rows span only " + std::to_string(range) + "x");
  if (slope > kMaxMoebiusSlope) out.fail("log-log slope " + std::to_string(slope));
  if (secs >= kMoebiusSeconds) out.fail("took " + std::to_string(secs) + " s");
  std::ostringstream d;
  d << "rows " << points.front().first << ".." << points.back().first << " (" << range << "x), slope " << slope;
  if (out.pass) out.detail = d.str();
  return out;
}

std::string without_timing(StrategyReport r) {
  r.metadata_ms = r.positive_ct_ms = r.negative_ct_ms = r.counting_ms = 0.0;
  return report_json(r);
}

std::string csv_of(const Database& db) {
  std::string out;
  for (std::size_t e = 0; e < db.schema().entities().size(); ++e) out += write_table_csv(db, db.entity_table(e));
  for (std::size_t r = 0; r < db.schema().num_relationships(); ++r) out += write_table_csv(db, db.link_table(r));
  return out;
}

// 10
Outcome determinism() {
  Outcome out;
  std::size_t artifacts = 0;
  for (const auto& name : preset_names()) {
    double scale = name == "visualgenome-like" ? 0.002 : 0.02;
    Database a = generate(preset(name, scale, 99));
    Database b = generate(preset(name, scale, 99));
    ++artifacts;
    if (csv_of(a) != csv_of(b)) out.fail(name + ": generated CSVs differ");
  }
  Database db = generate(preset("uw-like", 0.2, 5));
  auto lattice = build_lattice(db.schema());
  for (const auto& point : lattice.points()) {
    DumpTarget target;
    for (std::size_t r = 0; r < db.schema().num_relationships(); ++r)
      if (point.relationships >> r & 1u) target.point.push_back(db.schema().relationships()[r].name);
    for (auto kind : {StrategyKind::Precount, StrategyKind::Ondemand, StrategyKind::Hybrid}) {
      ++artifacts;
      if (dump_ct(db, target, kind) != dump_ct(db, target, kind)) out.fail("ct dump differs between runs");
    }
  }
  for (auto kind : {StrategyKind::Precount, StrategyKind::Ondemand, StrategyKind::Hybrid}) {
    RunOutput x = run_preset(db, kind, "uw-like");
    RunOutput y = run_preset(db, kind, "uw-like");
    artifacts += 2;
    if (without_timing(x.report) != without_timing(y.report))
      out.fail(std::string(to_string(kind)) + ": reports differ beyond timing fields");
    if (trace_text(x.trace) != trace_text(y.trace)) out.fail(std::string(to_string(kind)) + ": traces differ");
  }
  if (out.pass) out.detail = std::to_string(artifacts) + " artifacts byte-identical";
  return out;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* name, const Outcome& o) {
    std::printf("[%s] %2d %-26s %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  };

  Outcome c1 = oracle_equivalence();
  report(1, "oracle equivalence", c1);
  Outcome c2 = strategy_equivalence();
  report(2, "strategy equivalence", c2);

  Outcome c3;
  if (!g_norm.failures.empty()) c3.fail(g_norm.failures.front());
  if (c3.pass) c3.detail = std::to_string(g_norm.checked) + " totals exact";
  report(3, "normalization", c3);

  report(4, "BDeu correctness", bdeu_oracle());

  PresetRuns imdb = run_all("imdb-like", kImdbScale);
  PresetRuns hepatitis = run_all("hepatitis-like", kHepatitisScale);
  PresetRuns movielens = run_all("movielens-like", kMovielensScale);
  report(5, "size bounds", size_bounds({&imdb, &hepatitis, &movielens}));
  report(6, "join accounting", join_accounting(imdb));
  report(7, "memory direction", memory_direction(hepatitis, imdb, movielens));
  report(8, "negative-ct time direction", negative_time_direction());
  report(9, "Moebius scaling", moebius_scaling());
  report(10, "determinism", determinism());

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
