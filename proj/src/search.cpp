#include "relct/search.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace relct {

void SearchTrace::write_jsonl(std::ostream& out) const {
  for (const auto& e : entries) {
    nlohmann::json j{{"family", e.family}, {"score", e.score}, {"cached", e.cached}};
    out << j.dump() << '\n';
  }
}

double FamilyScorer::score(const FamilySpec& family) {
  const std::string key = family.key();
  ++trace_.families_requested;
  double value;
  bool cached = false;
  if (auto hit = provider_.cache().score(key)) {
    value = *hit;
    cached = true;
  } else {
    auto ct = provider_.family_ct(family);
    value = bdeu_family(family_counts(schema(), *ct, family), params_).value;
    provider_.cache().put_score(key, value);
  }
  trace_.distinct_families.insert(key);
  if (trace_.record_entries) trace_.entries.push_back({format_family(schema(), family), value, cached});
  return value;
}

namespace {

enum class MoveType { Add = 0, Delete = 1, Reverse = 2 };

struct Move {
  double delta = -std::numeric_limits<double>::infinity();
  MoveType type = MoveType::Add;
  VarId parent = 0;
  VarId child = 0;
  bool valid = false;
};

std::vector<VarId> with(std::vector<VarId> ps, VarId v) {
  ps.insert(std::lower_bound(ps.begin(), ps.end(), v), v);
  return ps;
}

std::vector<VarId> without(std::vector<VarId> ps, VarId v) {
  ps.erase(std::find(ps.begin(), ps.end(), v));
  return ps;
}

class Climber {
 public:
  Climber(FamilyScorer& scorer, const SearchOptions& options, const ClimbConstraints& constraints)
      : scorer_(scorer), options_(options), constraints_(constraints),
        frozen_(constraints.frozen.begin(), constraints.frozen.end()) {}

  bool is_frozen(VarId parent, VarId child) const { return frozen_.count({parent, child}) > 0; }

  bool may_add(const BayesNetState& bn, VarId parent, VarId child) const {
    return parent != child && !bn.has_edge(parent, child) && !bn.has_edge(child, parent) &&
           !constraints_.forbidden.count(var_pair(parent, child)) &&
           bn.parents(child).size() < options_.max_parents && !bn.would_create_cycle(parent, child);
  }

  /// Climbs from `bn` to a local optimum; returns the total score.
  double climb(BayesNetState& bn) {
    std::map<VarId, double> current;
    for (VarId n : bn.nodes()) current[n] = family_score(n, bn.parents(n));

    while (true) {
      Move best;
      auto consider = [&best](double delta, MoveType type, VarId parent, VarId child) {
        if (!best.valid || delta > best.delta) best = Move{delta, type, parent, child, true};
      };
      for (VarId child : bn.nodes()) {
        const auto& ps = bn.parents(child);
        for (VarId parent : bn.nodes()) {
          if (parent == child) continue;
          if (bn.has_edge(parent, child)) {
            if (is_frozen(parent, child)) continue;
            double d_del = family_score(child, without(ps, parent)) - current[child];
            consider(d_del, MoveType::Delete, parent, child);
            if (bn.parents(parent).size() < options_.max_parents &&
                !bn.reachable(parent, child, std::pair{parent, child})) {
              double d_rev = d_del + family_score(parent, with(bn.parents(parent), child)) - current[parent];
              consider(d_rev, MoveType::Reverse, parent, child);
            }
          } else if (may_add(bn, parent, child)) {
            consider(family_score(child, with(ps, parent)) - current[child], MoveType::Add, parent, child);
          }
        }
      }
      if (!best.valid || !(best.delta > options_.min_improvement)) break;

      switch (best.type) {
        case MoveType::Add:
          bn.add_edge(best.parent, best.child);
          break;
        case MoveType::Delete:
          bn.remove_edge(best.parent, best.child);
          break;
        case MoveType::Reverse:
          bn.remove_edge(best.parent, best.child);
          bn.add_edge(best.child, best.parent);
          current[best.parent] = family_score(best.parent, bn.parents(best.parent));
          break;
      }
      current[best.child] = family_score(best.child, bn.parents(best.child));
      ++scorer_.trace().moves_accepted;
    }

    double total = 0.0;
    for (VarId n : bn.nodes()) total += current[n];
    return total;
  }

 private:
  double family_score(VarId child, const std::vector<VarId>& parents) {
    return scorer_.score(FamilySpec{child, parents});
  }

  FamilyScorer& scorer_;
  const SearchOptions& options_;
  const ClimbConstraints& constraints_;
  std::set<std::pair<VarId, VarId>> frozen_;
};

/// Adds edges in the given order, skipping any that would break acyclicity
/// or the in-degree limit. Returns the edges actually added.
std::vector<std::pair<VarId, VarId>> add_edges(BayesNetState& bn, const std::vector<std::pair<VarId, VarId>>& edges,
                                               std::size_t max_parents) {
  std::vector<std::pair<VarId, VarId>> added;
  for (auto [p, c] : edges) {
    if (bn.has_edge(p, c)) continue;
    if (bn.has_edge(c, p) || bn.parents(c).size() >= max_parents || bn.would_create_cycle(p, c)) continue;
    bn.add_edge(p, c);
    added.emplace_back(p, c);
  }
  return added;
}

}  // namespace

BayesNetState hill_climb(const std::vector<VarId>& nodes, FamilyScorer& scorer, const SearchOptions& options,
                         const ClimbConstraints& constraints) {
  BayesNetState start(nodes);
  ClimbConstraints effective = constraints;
  effective.frozen = add_edges(start, constraints.frozen, options.max_parents);

  Climber climber(scorer, options, effective);
  BayesNetState best = start;
  double best_score = climber.climb(best);

  std::mt19937_64 rng(options.seed);
  for (std::size_t r = 0; r < options.restarts; ++r) {
    BayesNetState bn = start;
    std::vector<std::pair<VarId, VarId>> candidates;
    for (VarId a : bn.nodes())
      for (VarId b : bn.nodes())
        if (a < b) candidates.emplace_back(a, b);
    std::shuffle(candidates.begin(), candidates.end(), rng);
    for (auto [a, b] : candidates) {
      if (rng() & 1u) continue;
      if (rng() & 1u) std::swap(a, b);
      if (climber.may_add(bn, a, b)) bn.add_edge(a, b);
    }
    double s = climber.climb(bn);
    if (s > best_score) {
      best_score = s;
      best = std::move(bn);
    }
  }
  return best;
}

LearnResult learn_and_join(const RelationshipLattice& lattice, FamilyScorer& scorer, const SearchOptions& options) {
  const Schema& schema = scorer.schema();
  LearnResult result;

  for (PopVarId pv = 0; pv < lattice.entity_points().size(); ++pv) {
    const auto& point = lattice.entity_points()[pv];
    result.entity_models.emplace(pv, hill_climb(point.variables, scorer, options));
  }

  const auto& points = lattice.points();
  for (const auto& point : points) {
    ClimbConstraints constraints;
    auto inherit = [&](const LatticePoint& sub, const BayesNetState& model) {
      for (auto e : model.edges()) constraints.frozen.push_back(e);
      for (std::size_t i = 0; i < sub.variables.size(); ++i)
        for (std::size_t j = i + 1; j < sub.variables.size(); ++j)
          constraints.forbidden.insert(var_pair(sub.variables[i], sub.variables[j]));
    };
    // Larger sub-points first: they already carry the edges of their own sub-points.
    for (auto it = points.rbegin(); it != points.rend(); ++it) {
      if (it->relationships == point.relationships) continue;
      if ((it->relationships & point.relationships) == it->relationships)
        inherit(*it, result.point_models.at(it->relationships));
    }
    for (PopVarId pv = 0; pv < lattice.entity_points().size(); ++pv)
      if (point.population_vars >> pv & 1u) inherit(lattice.entity_points()[pv], result.entity_models.at(pv));
    result.point_models.emplace(point.relationships, hill_climb(point.variables, scorer, options, constraints));
  }

  // Merge: maximal points, then entity models, keeping every family covered.
  std::vector<VarId> all(schema.variables().size());
  std::iota(all.begin(), all.end(), VarId{0});
  BayesNetState merged(std::move(all));
  auto merge_model = [&](const BayesNetState& model) {
    for (auto [p, c] : model.edges()) {
      if (merged.has_edge(p, c) || merged.has_edge(c, p)) continue;
      if (merged.parents(c).size() >= options.max_parents || merged.would_create_cycle(p, c)) continue;
      if (!find_family_lattice_point(schema, FamilySpec{c, with(merged.parents(c), p)}, lattice)) continue;
      merged.add_edge(p, c);
    }
  };
  for (auto it = points.rbegin(); it != points.rend(); ++it) {
    bool maximal = std::none_of(points.begin(), points.end(), [&](const LatticePoint& q) {
      return q.relationships != it->relationships && (q.relationships & it->relationships) == it->relationships;
    });
    if (maximal) merge_model(result.point_models.at(it->relationships));
  }
  for (const auto& [pv, model] : result.entity_models) merge_model(model);

  double total = 0.0;
  for (VarId n : merged.nodes()) total += scorer.score(merged.family(n));
  result.model = std::move(merged);
  result.score = total;
  return result;
}

double mean_parents_per_node(const BayesNetState& bn) {
  if (bn.nodes().empty()) return 0.0;
  return static_cast<double>(bn.edge_count()) / static_cast<double>(bn.nodes().size());
}

std::string format_model(const Schema& schema, const BayesNetState& bn) {
  std::ostringstream out;
  for (VarId n : bn.nodes()) out << format_family(schema, bn.family(n)) << '\n';
  return out.str();
}

}  // namespace relct
