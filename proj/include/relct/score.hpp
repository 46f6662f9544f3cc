#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "relct/cttab.hpp"
#include "relct/schema.hpp"

namespace relct {

class CountProvider;

struct BdeuParams {
  double ess = 1.0;  // equivalent sample size N'
  // log P(B) contribution added once per family.
  double structure_prior_log = 0.0;
};

/// Sufficient statistics of one family. Only observed parent configurations
/// are listed; the remaining q_i - n_ij.size() configurations have zero counts.
struct FamilyCounts {
  std::size_t r_i = 0;
  Count q_i = 0;
  std::vector<Count> n_ij;
  std::vector<std::vector<Count>> n_ijk;  // [configuration][child value]
};

struct FamilyScore {
  double value = 0.0;
  std::size_t n_ij_nonzero = 0;
  std::size_t r_i = 0;
  Count q_i = 0;
};

/// Number of structurally possible parent configurations. A relationship's
/// attributes are N/A exactly when it is false, so every relationship touched
/// by the parents contributes (product of its attribute domains) + 1 joint
/// states; entity attributes contribute their domain size.
Count parent_configurations(const Schema& schema, std::span<const VarId> parents);

/// Index of a value in the child's effective domain (N/A last).
inline std::size_t value_index(Value v, std::size_t domain_size) {
  return v == kNA ? domain_size : v;
}

FamilyCounts family_counts(const Schema& schema, const ContingencyTable& ct, const FamilySpec& family);

/// BDeu in natural log:
///   prior + sum_j [ lgamma(a_j) - lgamma(N_ij + a_j)
///                   + sum_k ( lgamma(N_ijk + a_jk) - lgamma(a_jk) ) ]
/// with a_j = N'/q_i and a_jk = N'/(r_i q_i).
FamilyScore bdeu_family(const FamilyCounts& counts, const BdeuParams& params);

/// Directed acyclic graph over first-order variables.
class BayesNetState {
 public:
  BayesNetState() = default;
  explicit BayesNetState(std::vector<VarId> nodes);

  const std::vector<VarId>& nodes() const { return nodes_; }
  /// Sorted parent list of a node.
  const std::vector<VarId>& parents(VarId node) const;
  bool has_edge(VarId parent, VarId child) const;
  std::size_t edge_count() const;
  /// (parent, child) pairs in ascending (child, parent) order.
  std::vector<std::pair<VarId, VarId>> edges() const;

  /// True when `to` is reachable from `from` along directed edges, optionally
  /// ignoring one edge.
  bool reachable(VarId from, VarId to, std::optional<std::pair<VarId, VarId>> skip = std::nullopt) const;
  bool would_create_cycle(VarId parent, VarId child) const { return reachable(child, parent); }

  void add_node(VarId node);
  void add_edge(VarId parent, VarId child);
  void remove_edge(VarId parent, VarId child);
  FamilySpec family(VarId node) const { return FamilySpec{node, parents(node)}; }

  bool operator==(const BayesNetState& other) const {
    return nodes_ == other.nodes_ && parents_ == other.parents_;
  }

 private:
  std::vector<VarId> nodes_;
  std::map<VarId, std::vector<VarId>> parents_;
};

/// Sum of BDeu family scores over all nodes; recomputed from the provider's
/// ct-tables without consulting the score cache.
double score_model(const BayesNetState& bn, CountProvider& provider, const BdeuParams& params);

}  // namespace relct
