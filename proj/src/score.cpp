#include "relct/score.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "relct/strategy.hpp"

namespace relct {

Count parent_configurations(const Schema& schema, std::span<const VarId> parents) {
  Count q = 1;
  std::map<std::size_t, Count> rel_states;  // relationship -> product of attribute domains
  for (VarId p : parents) {
    const auto& var = schema.variable(p);
    switch (var.kind) {
      case VarKind::EntityAttribute:
        q = checked_mul(q, schema.domain_size(p));
        break;
      case VarKind::RelationshipIndicator:
        rel_states.try_emplace(var.owner, 1);
        break;
      case VarKind::RelationshipAttribute: {
        auto [it, inserted] = rel_states.try_emplace(var.owner, 1);
        it->second = checked_mul(it->second, schema.domain_size(p));
        break;
      }
    }
  }
  for (const auto& [rel, states] : rel_states) q = checked_mul(q, checked_add(states, 1));
  return q;
}

FamilyCounts family_counts(const Schema& schema, const ContingencyTable& ct, const FamilySpec& family) {
  auto child_col = ct.column_of(family.child);
  if (!child_col) throw Error("ct-table lacks family child " + schema.variable(family.child).name);
  std::vector<std::size_t> parent_cols;
  for (VarId p : family.parents) {
    auto c = ct.column_of(p);
    if (!c) throw Error("ct-table lacks family parent " + schema.variable(p).name);
    parent_cols.push_back(*c);
  }

  FamilyCounts out;
  const std::size_t child_domain = schema.domain_size(family.child);
  out.r_i = schema.cardinality(family.child);
  out.q_i = parent_configurations(schema, family.parents);

  std::map<std::string, std::vector<Count>> configs;  // ordered for a stable summation order
  std::string config(parent_cols.size(), '\0');
  for (const auto& [key, n] : ct.rows()) {
    for (std::size_t i = 0; i < parent_cols.size(); ++i) config[i] = key[parent_cols[i]];
    auto [it, inserted] = configs.try_emplace(config, out.r_i, 0);
    std::size_t k = value_index(static_cast<Value>(key[*child_col]), child_domain);
    it->second.at(k) = checked_add(it->second.at(k), n);
  }
  if (configs.size() > out.q_i)
    throw Error("observed more parent configurations than q_i for " + format_family(schema, family));
  for (auto& [cfg, counts] : configs) {
    Count nij = 0;
    for (Count c : counts) nij = checked_add(nij, c);
    out.n_ij.push_back(nij);
    out.n_ijk.push_back(std::move(counts));
  }
  return out;
}

FamilyScore bdeu_family(const FamilyCounts& counts, const BdeuParams& params) {
  if (!(params.ess > 0.0) || !std::isfinite(params.ess)) throw Error("equivalent sample size must be positive");
  if (counts.r_i < 1 || counts.q_i < 1) throw Error("BDeu needs r_i >= 1 and q_i >= 1");
  if (counts.n_ij.size() != counts.n_ijk.size() || counts.n_ij.size() > counts.q_i)
    throw Error("inconsistent family counts");

  const long double q = static_cast<long double>(counts.q_i);
  const long double a_j = params.ess / q;
  const long double a_jk = params.ess / (static_cast<long double>(counts.r_i) * q);
  const long double lg_a_j = std::lgammal(a_j);
  const long double lg_a_jk = std::lgammal(a_jk);

  long double sum = 0.0L;
  std::size_t nonzero = 0;
  for (std::size_t j = 0; j < counts.n_ij.size(); ++j) {
    if (counts.n_ijk[j].size() != counts.r_i) throw Error("child count vector has the wrong length");
    Count check = 0;
    long double inner = lg_a_j - std::lgammal(static_cast<long double>(counts.n_ij[j]) + a_j);
    for (Count n : counts.n_ijk[j]) {
      check += n;
      if (n) inner += std::lgammal(static_cast<long double>(n) + a_jk) - lg_a_jk;
    }
    if (check != counts.n_ij[j]) throw Error("N_ij differs from the sum of its N_ijk");
    if (counts.n_ij[j]) ++nonzero;
    sum += inner;
  }
  // Unobserved configurations: lgamma(a_j) - lgamma(0 + a_j) and each k-term cancel exactly.
  double value = static_cast<double>(params.structure_prior_log + sum);
  if (!std::isfinite(value)) throw Error("non-finite BDeu score");
  return FamilyScore{value, nonzero, counts.r_i, counts.q_i};
}

BayesNetState::BayesNetState(std::vector<VarId> nodes) {
  for (VarId n : nodes) add_node(n);
}

void BayesNetState::add_node(VarId node) {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), node);
  if (it != nodes_.end() && *it == node) return;
  nodes_.insert(it, node);
  parents_[node];
}

const std::vector<VarId>& BayesNetState::parents(VarId node) const {
  auto it = parents_.find(node);
  if (it == parents_.end()) throw Error("node not in network");
  return it->second;
}

bool BayesNetState::has_edge(VarId parent, VarId child) const {
  const auto& ps = parents(child);
  return std::binary_search(ps.begin(), ps.end(), parent);
}

std::size_t BayesNetState::edge_count() const {
  std::size_t n = 0;
  for (const auto& [node, ps] : parents_) n += ps.size();
  return n;
}

std::vector<std::pair<VarId, VarId>> BayesNetState::edges() const {
  std::vector<std::pair<VarId, VarId>> out;
  for (const auto& [child, ps] : parents_)
    for (VarId p : ps) out.emplace_back(p, child);
  return out;
}

bool BayesNetState::reachable(VarId from, VarId to, std::optional<std::pair<VarId, VarId>> skip) const {
  // Walk parent links backwards from `to`: `from` is an ancestor of `to`.
  std::vector<VarId> stack{to};
  std::set<VarId> seen{to};
  while (!stack.empty()) {
    VarId n = stack.back();
    stack.pop_back();
    if (n == from) return true;
    for (VarId p : parents(n)) {
      if (skip && skip->first == p && skip->second == n) continue;
      if (seen.insert(p).second) stack.push_back(p);
    }
  }
  return false;
}

void BayesNetState::add_edge(VarId parent, VarId child) {
  if (parent == child) throw Error("self loop");
  if (would_create_cycle(parent, child)) throw Error("edge would create a cycle");
  auto& ps = parents_.at(child);
  auto it = std::lower_bound(ps.begin(), ps.end(), parent);
  if (it != ps.end() && *it == parent) return;
  if (!parents_.count(parent)) throw Error("parent not in network");
  ps.insert(it, parent);
}

void BayesNetState::remove_edge(VarId parent, VarId child) {
  auto& ps = parents_.at(child);
  auto it = std::lower_bound(ps.begin(), ps.end(), parent);
  if (it == ps.end() || *it != parent) throw Error("no such edge");
  ps.erase(it);
}

double score_model(const BayesNetState& bn, CountProvider& provider, const BdeuParams& params) {
  const Schema& schema = provider.context().db.schema();
  double total = 0.0;
  for (VarId node : bn.nodes()) {
    FamilySpec family = bn.family(node);
    auto ct = provider.family_ct(family);
    total += bdeu_family(family_counts(schema, *ct, family), params).value;
  }
  return total;
}

}  // namespace relct
