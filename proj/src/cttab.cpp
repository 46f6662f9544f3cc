#include "relct/cttab.hpp"

#include <algorithm>

namespace relct {

ContingencyTable::ContingencyTable(std::vector<VarId> variables, RowMap rows)
    : variables_(std::move(variables)), rows_(std::move(rows)) {
  for (auto it = rows_.begin(); it != rows_.end();) {
    if (it->first.size() != variables_.size()) throw Error("row key arity mismatch");
    if (it->second == 0) {
      it = rows_.erase(it);
    } else {
      total_ = checked_add(total_, it->second);
      ++it;
    }
  }
}

ContingencyTable ContingencyTable::unit() {
  ContingencyTable t;
  t.add({}, 1);
  return t;
}

void ContingencyTable::add(std::string_view key, Count count) {
  if (count == 0) return;
  if (key.size() != variables_.size()) throw Error("row key arity mismatch");
  auto [it, inserted] = rows_.try_emplace(Key(key), 0);
  it->second = checked_add(it->second, count);
  total_ = checked_add(total_, count);
}

Count ContingencyTable::count(std::string_view key) const {
  auto it = rows_.find(Key(key));
  return it == rows_.end() ? 0 : it->second;
}

std::optional<std::size_t> ContingencyTable::column_of(VarId var) const {
  auto it = std::find(variables_.begin(), variables_.end(), var);
  if (it == variables_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - variables_.begin());
}

std::vector<std::pair<ContingencyTable::Key, Count>> ContingencyTable::sorted_rows() const {
  std::vector<std::pair<Key, Count>> out(rows_.begin(), rows_.end());
  std::sort(out.begin(), out.end());
  return out;
}

ContingencyTable project(const ContingencyTable& ct, std::span<const VarId> keep) {
  std::vector<std::size_t> cols;
  cols.reserve(keep.size());
  for (VarId v : keep) {
    auto c = ct.column_of(v);
    if (!c) throw Error("projection onto a variable the table does not have");
    cols.push_back(*c);
  }
  ContingencyTable::RowMap rows;
  rows.reserve(std::min<std::size_t>(ct.size(), 1024));
  std::string key(cols.size(), '\0');
  for (const auto& [k, n] : ct.rows()) {
    for (std::size_t i = 0; i < cols.size(); ++i) key[i] = k[cols[i]];
    auto [it, inserted] = rows.try_emplace(key, 0);
    it->second = checked_add(it->second, n);
  }
  return ContingencyTable(std::vector<VarId>(keep.begin(), keep.end()), std::move(rows));
}

ContingencyTable product(const Schema& schema, const ContingencyTable& a, const ContingencyTable& b) {
  PopSet pa = population_vars_of(schema, a.variables());
  PopSet pb = population_vars_of(schema, b.variables());
  if (pa & pb) throw Error("product of ct-tables sharing a population variable");
  std::vector<VarId> vars = a.variables();
  vars.insert(vars.end(), b.variables().begin(), b.variables().end());
  ContingencyTable::RowMap rows;
  rows.reserve(a.size() * b.size());
  for (const auto& [ka, na] : a.rows())
    for (const auto& [kb, nb] : b.rows()) rows.emplace(ka + kb, checked_mul(na, nb));
  return ContingencyTable(std::move(vars), std::move(rows));
}

ContingencyTable at_least_ct(const Schema& schema, PopSet space, std::span<const VarId> vars,
                             RelSet held, PositiveSource& source) {
  PopSet touched = schema.rel_population_vars(held);
  if ((touched & space) != touched)
    throw Error("relationship set reaches outside the grounding space");

  std::vector<VarId> out_vars;
  for (VarId v : vars) {
    const auto& var = schema.variable(v);
    if (var.is_indicator()) continue;
    if (var.kind == VarKind::RelationshipAttribute && !(held >> var.owner & 1u)) continue;
    if ((schema.population_vars_of(v) & space) != schema.population_vars_of(v))
      throw Error("variable " + var.name + " lies outside the grounding space");
    out_vars.push_back(v);
  }
  std::sort(out_vars.begin(), out_vars.end());

  ContingencyTable acc = ContingencyTable::unit();
  for (RelSet comp : schema.connected_components(held)) {
    std::vector<VarId> keep;
    PopSet comp_pops = schema.rel_population_vars(comp);
    for (VarId v : out_vars) {
      const auto& var = schema.variable(v);
      bool belongs = var.kind == VarKind::RelationshipAttribute
                         ? (comp >> var.owner & 1u) != 0
                         : (comp_pops & schema.population_vars_of(v)) != 0;
      if (belongs) keep.push_back(v);
    }
    acc = product(schema, acc, source.positive(comp, keep));
  }
  for (PopVarId pv = 0; pv < schema.population_vars().size(); ++pv) {
    PopSet bit = PopSet{1} << pv;
    if (!(space & bit) || (touched & bit)) continue;
    std::vector<VarId> keep;
    for (VarId v : out_vars)
      if (schema.population_vars_of(v) == bit) keep.push_back(v);
    acc = product(schema, acc, source.entity(pv, keep));
  }
  if (acc.variables() == out_vars) return acc;
  return project(acc, out_vars);
}

namespace {

struct RelColumns {
  std::size_t rel = 0;
  std::size_t indicator_col = 0;
  std::vector<std::size_t> attr_cols;
};

}  // namespace

ContingencyTable moebius_join(const Schema& schema, std::span<const VarId> vars, PopSet space,
                              PositiveSource& source, std::span<const std::size_t> pivot_order) {
  const RelSet active = relationships_of(schema, vars);
  std::vector<VarId> full(vars.begin(), vars.end());
  for (std::size_t r = 0; r < schema.num_relationships(); ++r)
    if (active >> r & 1u) full.push_back(schema.indicator(r));
  std::sort(full.begin(), full.end());
  full.erase(std::unique(full.begin(), full.end()), full.end());

  std::vector<std::size_t> order;
  if (pivot_order.empty()) {
    for (std::size_t r = 0; r < schema.num_relationships(); ++r)
      if (active >> r & 1u) order.push_back(r);
  } else {
    order.assign(pivot_order.begin(), pivot_order.end());
    RelSet seen = 0;
    for (std::size_t r : order) seen |= RelSet{1} << r;
    if (seen != active || order.size() != static_cast<std::size_t>(popcount(active)))
      throw Error("pivot order must list each active relationship once");
  }
  const std::size_t m = order.size();
  if (m > 20) throw Error("too many relationships in one Möbius join");

  std::vector<RelColumns> rel_cols(m);
  for (std::size_t j = 0; j < m; ++j) {
    rel_cols[j].rel = order[j];
    for (std::size_t c = 0; c < full.size(); ++c) {
      const auto& var = schema.variable(full[c]);
      if (!var.is_relational() || var.owner != order[j]) continue;
      if (var.is_indicator())
        rel_cols[j].indicator_col = c;
      else
        rel_cols[j].attr_cols.push_back(c);
    }
  }

  // tables[mask]: bit j set means relationship order[j] is T; unset means it
  // is unconstrained until pivot j has run, and F afterwards.
  const std::size_t n_tables = std::size_t{1} << m;
  std::vector<ContingencyTable::RowMap> tables(n_tables);
  for (std::size_t mask = 0; mask < n_tables; ++mask) {
    RelSet held = 0;
    for (std::size_t j = 0; j < m; ++j)
      if (mask >> j & 1u) held |= RelSet{1} << order[j];
    ContingencyTable at = at_least_ct(schema, space, full, held, source);
    std::vector<std::ptrdiff_t> src(full.size(), -1);
    for (std::size_t c = 0; c < full.size(); ++c)
      if (auto col = at.column_of(full[c])) src[c] = static_cast<std::ptrdiff_t>(*col);
    std::string key(full.size(), static_cast<char>(kDontCare));
    for (std::size_t j = 0; j < m; ++j)
      if (mask >> j & 1u) key[rel_cols[j].indicator_col] = static_cast<char>(kTrue);
    auto& dest = tables[mask];
    dest.reserve(at.size());
    for (const auto& [k, n] : at.rows()) {
      for (std::size_t c = 0; c < full.size(); ++c)
        if (src[c] >= 0) key[c] = k[static_cast<std::size_t>(src[c])];
      dest.emplace(key, n);
    }
  }

  for (std::size_t j = 0; j < m; ++j) {
    const auto& rc = rel_cols[j];
    for (std::size_t mask = 0; mask < n_tables; ++mask) {
      if (mask >> j & 1u) continue;
      auto& dc = tables[mask];
      const auto& held = tables[mask | (std::size_t{1} << j)];
      std::string key;
      for (const auto& [k, n] : held) {
        key = k;
        key[rc.indicator_col] = static_cast<char>(kDontCare);
        for (std::size_t c : rc.attr_cols) key[c] = static_cast<char>(kDontCare);
        auto it = dc.find(key);
        if (it == dc.end() || it->second < n)
          throw IntegrityError("Möbius join produced a negative count; positive counts are inconsistent");
        it->second -= n;
      }
      ContingencyTable::RowMap negated;
      negated.reserve(dc.size());
      for (auto& [k, n] : dc) {
        if (n == 0) continue;
        key = k;
        key[rc.indicator_col] = static_cast<char>(kFalse);
        for (std::size_t c : rc.attr_cols) key[c] = static_cast<char>(kNA);
        negated.emplace(std::move(key), n);
      }
      dc = std::move(negated);
    }
  }

  ContingencyTable::RowMap merged;
  std::size_t total_rows = 0;
  for (const auto& t : tables) total_rows += t.size();
  merged.reserve(total_rows);
  for (auto& t : tables) merged.merge(t);
  ContingencyTable complete(full, std::move(merged));
  if (full.size() == vars.size() && std::equal(full.begin(), full.end(), vars.begin())) return complete;
  return project(complete, vars);
}

namespace {

SizeBound saturating_pow(Count base, Count exp) {
  SizeBound out{1, false};
  for (Count i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(out.value, base, &out.value)) return {~Count{0}, true};
  }
  return out;
}

}  // namespace

SizeBound estimate_ct_size_precount(Count max_domain, Count columns) {
  if (max_domain < 1) throw Error("domain bound must be at least 1");
  return saturating_pow(max_domain, columns);
}

SizeBound estimate_ct_size_ondemand(Count max_domain, Count columns, Count max_parents) {
  if (max_domain < 1) throw Error("domain bound must be at least 1");
  if (max_parents >= columns) throw Error("max parents must be below the column count");
  // binom(C-1, k); each prefix product is itself a binomial, so division is exact.
  const Count n = columns - 1;
  unsigned __int128 binom = 1;
  for (Count i = 1; i <= max_parents; ++i) {
    binom = binom * (n - max_parents + i) / i;
    if (binom > ~Count{0}) return {~Count{0}, true};
  }
  SizeBound power = saturating_pow(max_domain, max_parents + 1);
  if (power.saturated) return power;
  Count out = 0;
  if (__builtin_mul_overflow(columns, static_cast<Count>(binom), &out) || __builtin_mul_overflow(out, power.value, &out))
    return {~Count{0}, true};
  return {out, false};
}

std::string dump_ct_csv(const Schema& schema, const ContingencyTable& ct) {
  std::string out = "count";
  for (VarId v : ct.variables()) out += "," + schema.variable(v).name;
  out += "\n";
  for (const auto& [key, n] : ct.sorted_rows()) {
    out += std::to_string(n);
    for (std::size_t c = 0; c < key.size(); ++c)
      out += "," + schema.value_symbol(ct.variables()[c], static_cast<Value>(key[c]));
    out += "\n";
  }
  return out;
}

std::string check_ct_invariants(const Schema& schema, const ContingencyTable& ct) {
  const auto& vars = ct.variables();
  Count sum = 0;
  for (const auto& [key, n] : ct.rows()) {
    if (n == 0) return "stored zero count";
    sum += n;
    for (std::size_t c = 0; c < vars.size(); ++c) {
      Value v = static_cast<Value>(key[c]);
      const auto& var = schema.variable(vars[c]);
      bool na_ok = var.kind == VarKind::RelationshipAttribute;
      if (!(v < schema.domain_size(vars[c]) || (na_ok && v == kNA)))
        return "value out of domain for " + var.name;
      if (var.kind != VarKind::RelationshipAttribute) continue;
      auto ind = ct.column_of(schema.indicator(var.owner));
      if (!ind) continue;
      bool is_false = static_cast<Value>(key[*ind]) == kFalse;
      if (is_false != (v == kNA)) return "N/A does not match indicator for " + var.name;
    }
  }
  if (sum != ct.total()) return "total does not match row sum";
  return {};
}

}  // namespace relct
