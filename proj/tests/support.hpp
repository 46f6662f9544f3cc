#pragma once

// Fixtures and independent oracles shared by the unit and acceptance tests.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "relct/gen.hpp"
#include "relct/score.hpp"
#include "relct/store.hpp"

namespace relct::testing {

/// Two professors, three students, two RA links:
///   p1 popularity=h, p2 popularity=l; s1 intelligence=1, s2=2, s3=2;
///   RA(p1,s1) salary=hi, RA(p2,s2) salary=lo.
extern const char* const kMicroSchema;
std::map<std::string, std::string> micro_files();
Database micro_university();

/// 12 professors x 19 students with 25 RA links. Link counts by
/// (capa, salary): (4,HIGH) 5, (5,HIGH) 4, (3,HIGH) 2, (3,LOW) 1, (2,LOW) 2,
/// (1,LOW) 2, (2,MED) 2, (3,MED) 4, (1,MED) 3.
extern const char* const kCapaSalarySchema;
Database capa_salary_university();

/// Random database small enough for brute force: 1-3 relationships and at
/// most `max_groundings` joint groundings of all population variables.
GenConfig random_micro_config(std::mt19937_64& rng, Count max_groundings = 1000);

/// Complete ct-table over `vars` (in that column order) by enumerating every
/// grounding of the population variables in `space`.
ContingencyTable brute_force_ct(const Database& db, const std::vector<VarId>& vars, PopSet space);

/// Positive ct-table of a relationship set by enumerating groundings and
/// keeping those where every relationship holds.
ContingencyTable brute_force_positive_ct(const Database& db, RelSet rels, const std::vector<VarId>& vars);

/// Positive counts straight from the database, counting joins.
class DatabaseSource : public PositiveSource {
 public:
  explicit DatabaseSource(const Database& db) : db_(db) {}
  ContingencyTable positive(RelSet component, std::span<const VarId> keep) override {
    return join_positive_ct(db_, component, keep, joins);
  }
  ContingencyTable entity(PopVarId pv, std::span<const VarId> keep) override { return entity_ct(db_, pv, keep); }
  JoinCounter joins;

 private:
  const Database& db_;
};

/// BDeu computed with MPFR log-gamma at 256-bit precision.
double bdeu_mpfr(const FamilyCounts& counts, double ess, double structure_prior_log = 0.0);

/// Every lattice point and entity point of a database's default lattice.
std::vector<const LatticePoint*> all_points(const RelationshipLattice& lattice);

}  // namespace relct::testing
