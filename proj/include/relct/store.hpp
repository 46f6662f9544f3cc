#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "relct/cttab.hpp"
#include "relct/schema.hpp"

namespace relct {

enum class ColumnRole { Key, ForeignKey, Attribute };

struct Column {
  std::string name;
  ColumnRole role = ColumnRole::Attribute;
};

/// One entity or relationship table, stored column-wise. Foreign keys are
/// resolved to entity row indices at load time.
struct DataTable {
  std::string name;
  std::vector<Column> columns;
  std::vector<std::string> keys;                        // entity tables only
  std::array<std::vector<std::uint32_t>, 2> endpoints;  // relationship tables only
  std::vector<std::vector<Value>> attributes;           // [attribute][row]
  std::size_t row_count = 0;
};

/// Per-relationship lookup structures built once at load.
struct LinkIndex {
  // CSR adjacency: links whose endpoint `side` is entity row r are
  // links[side][offsets[side][r] .. offsets[side][r+1]).
  std::array<std::vector<std::uint32_t>, 2> offsets;
  std::array<std::vector<std::uint32_t>, 2> links;
  std::unordered_map<std::uint64_t, std::uint32_t> by_pair;
};

/// Accumulates the number of pairwise table joins executed by one run.
struct JoinCounter {
  Count joins = 0;
};

/// Immutable validated database: one table per entity and relationship type.
class Database {
 public:
  Database(Schema schema, std::vector<DataTable> entity_tables, std::vector<DataTable> link_tables);

  const Schema& schema() const { return schema_; }
  const DataTable& entity_table(std::size_t entity) const { return entities_.at(entity); }
  const DataTable& link_table(std::size_t rel) const { return links_.at(rel); }
  const LinkIndex& link_index(std::size_t rel) const { return indexes_.at(rel); }

  Count population_size(PopVarId pv) const {
    return entities_.at(schema_.population_vars().at(pv).entity).row_count;
  }
  /// Product of population sizes over a set of population variables.
  Count grounding_count(PopSet pops) const;
  std::size_t total_rows() const;

 private:
  void validate_and_index();

  Schema schema_;
  std::vector<DataTable> entities_;
  std::vector<DataTable> links_;
  std::vector<LinkIndex> indexes_;
};

/// Builds a Database from CSV contents keyed by table name.
Database load_database(const Schema& schema, const std::map<std::string, std::string>& files);
/// Reads <dir>/<Table>.csv for every table of the schema.
Database load_database_dir(const Schema& schema, const std::filesystem::path& dir);

std::string write_table_csv(const Database& db, const DataTable& table);
void write_database_dir(const Database& db, const std::filesystem::path& dir);
/// Stable 64-bit hash of the schema text and every table's CSV.
std::uint64_t database_fingerprint(const Database& db);

/// GROUP BY over one entity table; no joins.
ContingencyTable entity_ct(const Database& db, PopVarId pv, std::span<const VarId> attrs);

/// Inner join of the relationship tables of a connected set with the entity
/// tables they reference, grouped by `keep` (attribute variables applicable to
/// the set; listed indicators are constant T). Adds (tables joined - 1) to
/// `counter`. Join order is left-deep: lowest relationship first, then the
/// lowest one sharing a bound population variable.
ContingencyTable join_positive_ct(const Database& db, RelSet rels, std::span<const VarId> keep,
                                  JoinCounter& counter);
/// ct+ of a lattice point over all its non-indicator variables.
ContingencyTable join_positive_ct(const Database& db, const LatticePoint& point, JoinCounter& counter);

/// Number of tables a positive join over `rels` reads.
std::size_t tables_joined(const Schema& schema, RelSet rels);

}  // namespace relct
