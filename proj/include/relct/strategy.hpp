#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "relct/cttab.hpp"
#include "relct/schema.hpp"
#include "relct/store.hpp"
#include "relct/timing.hpp"

namespace relct {

enum class StrategyKind { Precount, Ondemand, Hybrid };

/// Where positive or negative counts are computed from.
enum class CountGranularity { LatticePoint, Family };

/// Maps a (positive, negative) granularity pair to a strategy. Negative
/// counts per lattice point from positive counts per family is impossible.
StrategyKind strategy_for(CountGranularity positive, CountGranularity negative);

std::string_view to_string(StrategyKind kind);
StrategyKind parse_strategy(std::string_view name);

struct CacheStats {
  Count hits = 0;
  Count misses = 0;
  Count current_total_rows = 0;
  Count peak_total_rows = 0;
  Count evictions = 0;
  Count moebius_runs = 0;
  JoinCounter joins;
};

using TablePtr = std::shared_ptr<const ContingencyTable>;

/// Per-run store of ct-tables and family scores. Lattice and entity tables
/// are pinned; family tables may be evicted largest-first to respect the row
/// cap. Scores are never evicted.
class CountCache {
 public:
  explicit CountCache(std::optional<Count> max_rows = std::nullopt) : max_rows_(max_rows) {}

  const CacheStats& stats() const { return stats_; }
  CacheStats& stats() { return stats_; }
  std::optional<Count> max_rows() const { return max_rows_; }

  void put_positive(RelSet point, ContingencyTable ct);
  void put_complete(RelSet point, ContingencyTable ct);
  void put_entity(PopVarId pv, ContingencyTable ct);
  TablePtr put_family(const std::string& key, ContingencyTable ct);

  TablePtr positive(RelSet point) const;
  TablePtr complete(RelSet point) const;
  TablePtr entity(PopVarId pv) const;
  TablePtr family(const std::string& key) const;

  std::size_t positive_count() const { return positive_.size(); }
  std::size_t complete_count() const { return complete_.size(); }
  std::size_t family_count() const { return family_.size(); }
  /// Rows summed over every family table ever inserted.
  Count family_rows_inserted() const { return family_rows_inserted_; }
  Count lattice_complete_rows() const;

  std::optional<double> score(const std::string& key) const;
  void put_score(const std::string& key, double value) { scores_[key] = value; }

 private:
  void account(Count rows);
  void enforce_cap(const std::string* keep);

  std::optional<Count> max_rows_;
  CacheStats stats_;
  std::map<RelSet, TablePtr> positive_;
  std::map<RelSet, TablePtr> complete_;
  std::map<PopVarId, TablePtr> entity_;
  std::unordered_map<std::string, TablePtr> family_;
  std::unordered_map<std::string, double> scores_;
  Count family_rows_inserted_ = 0;
};

/// Everything a strategy needs besides its cache.
struct CountingContext {
  const Database& db;
  const RelationshipLattice& lattice;
  ComponentClock* clock = nullptr;
  Deadline deadline{};
};

/// Cache key for a family's ct-table: its sorted variable set.
std::string family_ct_key(const FamilySpec& family);

/// Alg. PRECOUNT, phase 1: ct+ by join and complete ct by Möbius join for
/// every lattice point, plus entity tables.
void precount_prepare(CountingContext& ctx, CountCache& cache);
/// Projection of the covering point's cached complete table.
TablePtr precount_family_ct(CountingContext& ctx, const FamilySpec& family, CountCache& cache);

/// Fresh joins for the family's relationship chains, then a Möbius join.
TablePtr ondemand_family_ct(CountingContext& ctx, const FamilySpec& family, CountCache& cache);

/// Caches ct+ per lattice point and entity tables; no Möbius work.
void hybrid_prepare(CountingContext& ctx, CountCache& cache);
/// Positive inputs projected from cached lattice ct+, completed per family.
TablePtr hybrid_family_ct(CountingContext& ctx, const FamilySpec& family, CountCache& cache);

/// Uniform front end over the three strategies.
class CountProvider {
 public:
  CountProvider(StrategyKind kind, CountingContext ctx, CountCache& cache)
      : kind_(kind), ctx_(ctx), cache_(cache) {}

  StrategyKind kind() const { return kind_; }
  void prepare();
  TablePtr family_ct(const FamilySpec& family);
  /// Complete ct-table of a lattice point, computed the way this strategy
  /// would; not cached. Requires prepare() for PRECOUNT and HYBRID.
  ContingencyTable point_ct(const LatticePoint& point);
  CountCache& cache() { return cache_; }
  const CountingContext& context() const { return ctx_; }
  CountingContext& context() { return ctx_; }
  /// Wall time spent inside prepare(), family_ct() and point_ct(), measured
  /// independently of the component clock.
  double counting_wall_ms() const { return counting_wall_ms_; }

 private:
  StrategyKind kind_;
  double counting_wall_ms_ = 0.0;
  CountingContext ctx_;
  CountCache& cache_;
};

}  // namespace relct
