#include "relct/strategy.hpp"

#include <algorithm>
#include <chrono>

namespace relct {

StrategyKind strategy_for(CountGranularity positive, CountGranularity negative) {
  if (positive == CountGranularity::LatticePoint)
    return negative == CountGranularity::LatticePoint ? StrategyKind::Precount : StrategyKind::Hybrid;
  if (negative == CountGranularity::Family) return StrategyKind::Ondemand;
  throw Error("IMPOSSIBLE: negative lattice-point counts cannot be built from family positive counts");
}

std::string_view to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Precount:
      return "precount";
    case StrategyKind::Ondemand:
      return "ondemand";
    case StrategyKind::Hybrid:
      return "hybrid";
  }
  return "?";
}

StrategyKind parse_strategy(std::string_view name) {
  if (name == "precount") return StrategyKind::Precount;
  if (name == "ondemand") return StrategyKind::Ondemand;
  if (name == "hybrid") return StrategyKind::Hybrid;
  throw Error("unknown strategy '" + std::string(name) + "'");
}

void CountCache::account(Count rows) {
  stats_.current_total_rows += rows;
  stats_.peak_total_rows = std::max(stats_.peak_total_rows, stats_.current_total_rows);
}

void CountCache::enforce_cap(const std::string* keep) {
  if (!max_rows_ || stats_.current_total_rows <= *max_rows_) return;
  while (stats_.current_total_rows > *max_rows_) {
    auto victim = family_.end();
    for (auto it = family_.begin(); it != family_.end(); ++it) {
      if (keep && it->first == *keep) continue;
      if (victim == family_.end() || it->second->size() > victim->second->size() ||
          (it->second->size() == victim->second->size() && it->first < victim->first))
        victim = it;
    }
    if (victim == family_.end())
      throw MemoryCapExceeded("cached ct rows " + std::to_string(stats_.current_total_rows) +
                              " exceed the cap of " + std::to_string(*max_rows_));
    stats_.current_total_rows -= victim->second->size();
    ++stats_.evictions;
    family_.erase(victim);
  }
}

void CountCache::put_positive(RelSet point, ContingencyTable ct) {
  Count rows = ct.size();
  positive_[point] = std::make_shared<const ContingencyTable>(std::move(ct));
  stats_.current_total_rows += rows;
  enforce_cap(nullptr);
  stats_.peak_total_rows = std::max(stats_.peak_total_rows, stats_.current_total_rows);
}

void CountCache::put_complete(RelSet point, ContingencyTable ct) {
  Count rows = ct.size();
  complete_[point] = std::make_shared<const ContingencyTable>(std::move(ct));
  stats_.current_total_rows += rows;
  enforce_cap(nullptr);
  stats_.peak_total_rows = std::max(stats_.peak_total_rows, stats_.current_total_rows);
}

void CountCache::put_entity(PopVarId pv, ContingencyTable ct) {
  Count rows = ct.size();
  entity_[pv] = std::make_shared<const ContingencyTable>(std::move(ct));
  account(rows);
}

TablePtr CountCache::put_family(const std::string& key, ContingencyTable ct) {
  Count rows = ct.size();
  auto ptr = std::make_shared<const ContingencyTable>(std::move(ct));
  family_[key] = ptr;
  family_rows_inserted_ += rows;
  stats_.current_total_rows += rows;
  enforce_cap(&key);
  stats_.peak_total_rows = std::max(stats_.peak_total_rows, stats_.current_total_rows);
  return ptr;
}

namespace {

/// Adds the lifetime of the object to an accumulator in milliseconds.
class Stopwatch {
 public:
  explicit Stopwatch(double& total) : total_(total), start_(std::chrono::steady_clock::now()) {}
  ~Stopwatch() {
    total_ += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  double& total_;
  std::chrono::steady_clock::time_point start_;
};

template <typename Map, typename K>
TablePtr lookup(const Map& m, const K& k) {
  auto it = m.find(k);
  return it == m.end() ? nullptr : it->second;
}

}  // namespace

TablePtr CountCache::positive(RelSet point) const { return lookup(positive_, point); }
TablePtr CountCache::complete(RelSet point) const { return lookup(complete_, point); }
TablePtr CountCache::entity(PopVarId pv) const { return lookup(entity_, pv); }
TablePtr CountCache::family(const std::string& key) const { return lookup(family_, key); }

Count CountCache::lattice_complete_rows() const {
  Count n = 0;
  for (const auto& [k, t] : complete_) n += t->size();
  return n;
}

std::optional<double> CountCache::score(const std::string& key) const {
  auto it = scores_.find(key);
  if (it == scores_.end()) return std::nullopt;
  return it->second;
}

std::string family_ct_key(const FamilySpec& family) {
  std::string out;
  for (VarId v : family.variables()) out += std::to_string(v) + ",";
  return out;
}

namespace {

/// Positive counts served by projection from cached lattice tables.
class CachedSource : public PositiveSource {
 public:
  CachedSource(CountingContext& ctx, const CountCache& cache) : ctx_(ctx), cache_(cache) {}

  ContingencyTable positive(RelSet component, std::span<const VarId> keep) override {
    auto scope = charge(ctx_.clock, Component::PositiveCt);
    TablePtr t = cache_.positive(component);
    if (!t) throw Error("no cached positive ct-table for a relationship chain; was the strategy prepared?");
    return project(*t, keep);
  }

  ContingencyTable entity(PopVarId pv, std::span<const VarId> keep) override {
    auto scope = charge(ctx_.clock, Component::PositiveCt);
    TablePtr t = cache_.entity(pv);
    if (!t) throw Error("no cached entity ct-table; was the strategy prepared?");
    return project(*t, keep);
  }

 private:
  CountingContext& ctx_;
  const CountCache& cache_;
};

/// Positive counts computed from the database on every request; joins are
/// shared only within one family's Möbius join.
class FreshSource : public PositiveSource {
 public:
  FreshSource(CountingContext& ctx, JoinCounter& joins) : ctx_(ctx), joins_(joins) {}

  ContingencyTable positive(RelSet component, std::span<const VarId> keep) override {
    auto scope = charge(ctx_.clock, Component::PositiveCt);
    ctx_.deadline.check("on-demand join");
    auto it = joined_.find(component);
    if (it == joined_.end()) {
      std::vector<VarId> all;
      for (VarId v : wanted_)
        if (applies(component, v)) all.push_back(v);
      it = joined_.emplace(component, join_positive_ct(ctx_.db, component, all, joins_)).first;
    }
    return project(it->second, keep);
  }

  ContingencyTable entity(PopVarId pv, std::span<const VarId> keep) override {
    auto scope = charge(ctx_.clock, Component::PositiveCt);
    return entity_ct(ctx_.db, pv, keep);
  }

  /// Attribute variables the current family may ask for.
  void set_wanted(std::vector<VarId> vars) {
    wanted_.clear();
    for (VarId v : vars)
      if (!ctx_.db.schema().variable(v).is_indicator()) wanted_.push_back(v);
  }

 private:
  bool applies(RelSet component, VarId v) const {
    const Schema& s = ctx_.db.schema();
    const auto& var = s.variable(v);
    if (var.kind == VarKind::RelationshipAttribute) return (component >> var.owner & 1u) != 0;
    return (s.rel_population_vars(component) & s.population_vars_of(v)) != 0;
  }

  CountingContext& ctx_;
  JoinCounter& joins_;
  std::vector<VarId> wanted_;
  std::map<RelSet, ContingencyTable> joined_;
};

void prepare_entities(CountingContext& ctx, CountCache& cache) {
  const Schema& schema = ctx.db.schema();
  for (PopVarId pv = 0; pv < schema.population_vars().size(); ++pv) {
    auto scope = charge(ctx.clock, Component::PositiveCt);
    cache.put_entity(pv, entity_ct(ctx.db, pv, schema.entity_variables(pv)));
  }
}

void prepare_positive(CountingContext& ctx, CountCache& cache, const LatticePoint& point) {
  ctx.deadline.check("positive ct-table construction");
  auto scope = charge(ctx.clock, Component::PositiveCt);
  cache.put_positive(point.relationships, join_positive_ct(ctx.db, point, cache.stats().joins));
}

const LatticePoint& covering_point(CountingContext& ctx, const FamilySpec& family) {
  return family_lattice_point(ctx.db.schema(), family, ctx.lattice);
}

}  // namespace

void precount_prepare(CountingContext& ctx, CountCache& cache) {
  prepare_entities(ctx, cache);
  CachedSource source(ctx, cache);
  for (const auto& point : ctx.lattice.points()) {
    prepare_positive(ctx, cache, point);
    ctx.deadline.check("lattice Möbius join");
    auto scope = charge(ctx.clock, Component::NegativeCt);
    ++cache.stats().moebius_runs;
    cache.put_complete(point.relationships,
                       moebius_join(ctx.db.schema(), point.variables, point.population_vars, source));
  }
}

TablePtr precount_family_ct(CountingContext& ctx, const FamilySpec& family, CountCache& cache) {
  const std::string key = family_ct_key(family);
  if (TablePtr hit = cache.family(key)) {
    ++cache.stats().hits;
    return hit;
  }
  ++cache.stats().misses;
  ctx.deadline.check("family ct-table projection");
  const LatticePoint& point = covering_point(ctx, family);
  TablePtr source = point.is_entity_point() ? cache.entity(*point.entity_point)
                                            : cache.complete(point.relationships);
  if (!source) throw Error("covering lattice point has no cached ct-table; was precount prepared?");
  auto scope = charge(ctx.clock, Component::NegativeCt);
  return cache.put_family(key, project(*source, family.variables()));
}

TablePtr ondemand_family_ct(CountingContext& ctx, const FamilySpec& family, CountCache& cache) {
  const std::string key = family_ct_key(family);
  if (TablePtr hit = cache.family(key)) {
    ++cache.stats().hits;
    return hit;
  }
  ++cache.stats().misses;
  ctx.deadline.check("on-demand family counting");
  const LatticePoint& point = covering_point(ctx, family);
  FreshSource source(ctx, cache.stats().joins);
  source.set_wanted(family.variables());
  auto scope = charge(ctx.clock, Component::NegativeCt);
  ++cache.stats().moebius_runs;
  auto vars = family.variables();
  return cache.put_family(key, moebius_join(ctx.db.schema(), vars, point.population_vars, source));
}

void hybrid_prepare(CountingContext& ctx, CountCache& cache) {
  prepare_entities(ctx, cache);
  for (const auto& point : ctx.lattice.points()) prepare_positive(ctx, cache, point);
}

TablePtr hybrid_family_ct(CountingContext& ctx, const FamilySpec& family, CountCache& cache) {
  const std::string key = family_ct_key(family);
  if (TablePtr hit = cache.family(key)) {
    ++cache.stats().hits;
    return hit;
  }
  ++cache.stats().misses;
  ctx.deadline.check("hybrid family counting");
  const LatticePoint& point = covering_point(ctx, family);
  CachedSource source(ctx, cache);
  auto scope = charge(ctx.clock, Component::NegativeCt);
  ++cache.stats().moebius_runs;
  auto vars = family.variables();
  return cache.put_family(key, moebius_join(ctx.db.schema(), vars, point.population_vars, source));
}

void CountProvider::prepare() {
  Stopwatch watch(counting_wall_ms_);
  auto scope = charge(ctx_.clock, Component::MetaData);
  switch (kind_) {
    case StrategyKind::Precount:
      precount_prepare(ctx_, cache_);
      break;
    case StrategyKind::Hybrid:
      hybrid_prepare(ctx_, cache_);
      break;
    case StrategyKind::Ondemand:
      break;
  }
}

TablePtr CountProvider::family_ct(const FamilySpec& family) {
  Stopwatch watch(counting_wall_ms_);
  auto scope = charge(ctx_.clock, Component::MetaData);
  switch (kind_) {
    case StrategyKind::Precount:
      return precount_family_ct(ctx_, family, cache_);
    case StrategyKind::Ondemand:
      return ondemand_family_ct(ctx_, family, cache_);
    case StrategyKind::Hybrid:
      return hybrid_family_ct(ctx_, family, cache_);
  }
  throw Error("unreachable strategy");
}

ContingencyTable CountProvider::point_ct(const LatticePoint& point) {
  Stopwatch watch(counting_wall_ms_);
  auto scope = charge(ctx_.clock, Component::MetaData);
  if (point.is_entity_point()) {
    auto inner = charge(ctx_.clock, Component::PositiveCt);
    return entity_ct(ctx_.db, *point.entity_point, point.variables);
  }
  switch (kind_) {
    case StrategyKind::Precount: {
      TablePtr t = cache_.complete(point.relationships);
      if (!t) throw Error("lattice point has no cached ct-table; was precount prepared?");
      return *t;
    }
    case StrategyKind::Hybrid: {
      CachedSource source(ctx_, cache_);
      auto inner = charge(ctx_.clock, Component::NegativeCt);
      return moebius_join(ctx_.db.schema(), point.variables, point.population_vars, source);
    }
    case StrategyKind::Ondemand: {
      FreshSource source(ctx_, cache_.stats().joins);
      source.set_wanted(point.variables);
      auto inner = charge(ctx_.clock, Component::NegativeCt);
      return moebius_join(ctx_.db.schema(), point.variables, point.population_vars, source);
    }
  }
  throw Error("unreachable strategy");
}

}  // namespace relct
