#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relct/score.hpp"
#include "relct/search.hpp"
#include "relct/store.hpp"
#include "relct/strategy.hpp"

namespace relct {

inline constexpr double kDefaultBudgetSeconds = 6000.0;  // 100 minutes

struct RunOptions {
  StrategyKind strategy = StrategyKind::Hybrid;
  BdeuParams params;
  SearchOptions search;
  std::size_t max_chain_length = kDefaultMaxChainLength;
  std::optional<Count> max_ct_rows;
  std::optional<double> budget_s;
  std::string database_label;
  /// Time already spent on metadata before the run (e.g. schema parsing).
  double metadata_offset_ms = 0.0;
  bool record_trace_entries = false;
};

struct StrategyReport {
  int report_version = 1;
  std::string strategy;
  std::string database;
  std::string db_fingerprint;  // 16 hex digits
  std::uint64_t seed = 0;
  std::size_t max_chain_length = 0;
  std::size_t max_parents = 0;
  double ess = 0.0;

  double metadata_ms = 0.0;
  double positive_ct_ms = 0.0;
  double negative_ct_ms = 0.0;
  double counting_ms = 0.0;  // independently measured wall time of the whole run

  Count join_count = 0;
  Count prepare_join_count = 0;
  Count search_join_count = 0;
  Count moebius_runs = 0;
  Count peak_total_rows = 0;
  Count lattice_ct_rows = 0;  // rows of all complete lattice-point tables
  Count family_ct_rows = 0;   // rows summed over all family tables built
  Count cache_hits = 0;
  Count cache_misses = 0;
  Count evictions = 0;

  Count distinct_families = 0;
  Count families_requested = 0;
  Count moves_accepted = 0;
  std::size_t lattice_points = 0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  double final_score = 0.0;
  double mp_per_node = 0.0;

  bool partial = false;
  std::string partial_reason;
};

struct RunOutput {
  StrategyReport report;
  SearchTrace trace;
  BayesNetState model;
};

/// Metadata (variables, lattice), counting, and learn-and-join search under
/// one strategy. Budget exhaustion yields a partial report instead of an error.
RunOutput run_benchmark(const Database& db, const RunOptions& options);

std::string report_json(const StrategyReport& report);
StrategyReport parse_report(const std::string& json_text);

struct Comparison {
  std::vector<StrategyReport> reports;
  /// Named qualitative checks; absent when the needed strategies are missing.
  std::vector<std::pair<std::string, bool>> flags;
  std::string table;  // aligned text rendering
};

/// Requires at least two reports on the same database, seed, and search
/// parameters.
Comparison compare(const std::vector<StrategyReport>& reports);

/// Target of a ct dump: a family, or a lattice point by relationship names.
struct DumpTarget {
  std::optional<std::string> family;
  std::vector<std::string> point;
};

std::string dump_ct(const Database& db, const DumpTarget& target, StrategyKind strategy,
                    std::size_t max_chain_length = kDefaultMaxChainLength);

}  // namespace relct
