#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "relct/score.hpp"
#include "relct/strategy.hpp"

namespace relct {

struct SearchOptions {
  std::size_t max_parents = 4;
  /// Extra hill-climbing runs from seeded random initial graphs.
  std::size_t restarts = 0;
  std::uint64_t seed = 0;
  /// Moves must improve the score by more than this.
  double min_improvement = 1e-9;
};

struct TraceEntry {
  std::string family;  // "child <- p1, p2"
  double score = 0.0;
  bool cached = false;
};

struct SearchTrace {
  Count families_requested = 0;
  std::set<std::string> distinct_families;
  Count moves_accepted = 0;
  std::vector<TraceEntry> entries;
  bool record_entries = false;

  /// One JSON object per line.
  void write_jsonl(std::ostream& out) const;
};

/// Family scorer backed by a count provider; memoizes scores in the
/// provider's cache and records every request in the trace.
class FamilyScorer {
 public:
  FamilyScorer(CountProvider& provider, BdeuParams params, SearchTrace& trace)
      : provider_(provider), params_(params), trace_(trace) {}

  double score(const FamilySpec& family);
  const Schema& schema() const { return provider_.context().db.schema(); }
  CountProvider& provider() { return provider_; }
  const BdeuParams& params() const { return params_; }
  SearchTrace& trace() { return trace_; }

 private:
  CountProvider& provider_;
  BdeuParams params_;
  SearchTrace& trace_;
};

/// Unordered variable pair, smaller id first.
using VarPair = std::pair<VarId, VarId>;
inline VarPair var_pair(VarId a, VarId b) { return a < b ? VarPair{a, b} : VarPair{b, a}; }

struct ClimbConstraints {
  /// (parent, child) edges that are always present and never moved.
  std::vector<std::pair<VarId, VarId>> frozen;
  /// Pairs that may not gain a new edge in either direction.
  std::set<VarPair> forbidden;
};

/// Greedy add/delete/reverse hill climbing over `nodes`. Among moves with equal
/// improvement the first in (child, parent, add < delete < reverse) order wins.
BayesNetState hill_climb(const std::vector<VarId>& nodes, FamilyScorer& scorer, const SearchOptions& options,
                         const ClimbConstraints& constraints = {});

struct LearnResult {
  BayesNetState model;
  std::map<RelSet, BayesNetState> point_models;
  std::map<PopVarId, BayesNetState> entity_models;
  double score = 0.0;
};

/// Learn-and-join: entity tables first, then each lattice point in order,
/// inheriting the edges of every sub-point and adding no edge between two
/// variables already considered together in a sub-point.
LearnResult learn_and_join(const RelationshipLattice& lattice, FamilyScorer& scorer, const SearchOptions& options);

double mean_parents_per_node(const BayesNetState& bn);

/// "child <- p1, p2" per node, one per line, nodes in id order.
std::string format_model(const Schema& schema, const BayesNetState& bn);

}  // namespace relct
