#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "relct/common.hpp"
#include "relct/schema.hpp"

namespace relct {

/// Multiset of value tuples over an ordered variable list. A row key holds one
/// byte per variable; absent keys have count zero and are never stored.
class ContingencyTable {
 public:
  using Key = std::string;
  using RowMap = std::unordered_map<Key, Count>;

  ContingencyTable() = default;
  explicit ContingencyTable(std::vector<VarId> variables) : variables_(std::move(variables)) {}
  ContingencyTable(std::vector<VarId> variables, RowMap rows);

  /// Table over no variables holding a single row of count 1.
  static ContingencyTable unit();

  const std::vector<VarId>& variables() const { return variables_; }
  std::size_t arity() const { return variables_.size(); }
  const RowMap& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  Count total() const { return total_; }

  void add(std::string_view key, Count count);
  Count count(std::string_view key) const;
  std::optional<std::size_t> column_of(VarId var) const;

  /// Rows ordered by unsigned byte comparison of their keys, so N/A sorts last.
  std::vector<std::pair<Key, Count>> sorted_rows() const;

  bool operator==(const ContingencyTable& other) const {
    return variables_ == other.variables_ && rows_ == other.rows_;
  }

 private:
  std::vector<VarId> variables_;
  RowMap rows_;
  Count total_ = 0;
};

inline std::string make_key(std::initializer_list<Value> values) {
  return std::string(values.begin(), values.end());
}

/// Sums out every column not in `keep`; output columns follow `keep` order.
ContingencyTable project(const ContingencyTable& ct, std::span<const VarId> keep);

/// Cartesian product over disjoint population variables; counts multiply.
ContingencyTable product(const Schema& schema, const ContingencyTable& a, const ContingencyTable& b);

/// Supplies positive counts to the Möbius join. Strategies differ only in
/// where these come from.
class PositiveSource {
 public:
  virtual ~PositiveSource() = default;
  /// ct+ of a connected relationship set grouped by `keep`, which lists
  /// attribute variables applicable to the set.
  virtual ContingencyTable positive(RelSet component, std::span<const VarId> keep) = 0;
  /// Entity counts of one population variable grouped by `keep`.
  virtual ContingencyTable entity(PopVarId pv, std::span<const VarId> keep) = 0;
};

/// Counts over all groundings of `space` in which every relationship of `held`
/// is true, the rest unconstrained. Keyed by the entity attributes in `vars`
/// and the attributes in `vars` that belong to `held`; columns sorted.
ContingencyTable at_least_ct(const Schema& schema, PopSet space, std::span<const VarId> vars,
                             RelSet held, PositiveSource& source);

/// Complete ct-table over `vars` for the groundings of `space`. Indicators of
/// relationships whose attributes appear in `vars` are added internally and
/// summed out at the end. `pivot_order` lists relationship indices; empty means
/// ascending. Never touches the database.
ContingencyTable moebius_join(const Schema& schema, std::span<const VarId> vars, PopSet space,
                              PositiveSource& source, std::span<const std::size_t> pivot_order = {});

struct SizeBound {
  Count value = 0;
  bool saturated = false;
};

/// V^C.
SizeBound estimate_ct_size_precount(Count max_domain, Count columns);
/// C * binom(C-1, k) * V^(k+1); requires k < C.
SizeBound estimate_ct_size_ondemand(Count max_domain, Count columns, Count max_parents);

/// CSV with a leading count column and one column per variable, rows sorted.
std::string dump_ct_csv(const Schema& schema, const ContingencyTable& ct);

/// Checks value ranges and that relationship attributes are N/A exactly when
/// their indicator (if present) is F. Returns an empty string when valid.
std::string check_ct_invariants(const Schema& schema, const ContingencyTable& ct);

}  // namespace relct
