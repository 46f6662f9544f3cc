#include "support.hpp"

#include <cstdint>
// mpfr.h declares the intmax_t conversions only when <cstdint> comes first.
#include <mpfr.h>

#include <algorithm>
#include <set>

namespace relct::testing {

const char* const kMicroSchema =
    "entity Prof key=id attr popularity{h,l}\n"
    "entity Student key=id attr intelligence{1,2}\n"
    "rel RA(Prof as P, Student as S) attr salary{hi,lo}\n";

std::map<std::string, std::string> micro_files() {
  return {
      {"Prof", "id,popularity\np1,h\np2,l\n"},
      {"Student", "id,intelligence\ns1,1\ns2,2\ns3,2\n"},
      {"RA", "P,S,salary\np1,s1,hi\np2,s2,lo\n"},
  };
}

Database micro_university() { return load_database(load_schema(kMicroSchema), micro_files()); }

const char* const kCapaSalarySchema =
    "entity Prof key=id attr popularity{1,2,3}\n"
    "entity Student key=id attr intelligence{1,2,3}\n"
    "rel RA(Prof as P, Student as S) attr capa{1,2,3,4,5} attr salary{HIGH,LOW,MED}\n";

Database capa_salary_university() {
  struct Cell {
    const char* capa;
    const char* salary;
    int links;
  };
  const Cell cells[] = {{"4", "HIGH", 5}, {"5", "HIGH", 4}, {"3", "HIGH", 2}, {"3", "LOW", 1}, {"2", "LOW", 2},
                        {"1", "LOW", 2},  {"2", "MED", 2},  {"3", "MED", 4},  {"1", "MED", 3}};
  std::string prof = "id,popularity\n", student = "id,intelligence\n", ra = "P,S,capa,salary\n";
  for (int i = 0; i < 12; ++i) prof += "p" + std::to_string(i) + "," + std::to_string(i % 3 + 1) + "\n";
  for (int i = 0; i < 19; ++i) student += "s" + std::to_string(i) + "," + std::to_string(i % 3 + 1) + "\n";
  int link = 0;
  for (const auto& c : cells)
    for (int k = 0; k < c.links; ++k, ++link)
      ra += "p" + std::to_string(link % 12) + ",s" + std::to_string(link % 19) + "," + c.capa + "," + c.salary + "\n";
  return load_database(load_schema(kCapaSalarySchema), {{"Prof", prof}, {"Student", student}, {"RA", ra}});
}

GenConfig random_micro_config(std::mt19937_64& rng, Count max_groundings) {
  auto pick = [&](std::uint64_t n) { return static_cast<std::size_t>(rng() % n); };
  auto attrs = [&](const char* prefix) {
    std::vector<GenAttribute> out;
    std::size_t n = pick(3);
    for (std::size_t i = 0; i < n; ++i) out.push_back(GenAttribute{prefix + std::to_string(i), 2 + pick(2), {}, 0.0});
    return out;
  };

  GenConfig c;
  c.seed = rng();
  const std::size_t n_entities = 1 + pick(3);
  for (std::size_t e = 0; e < n_entities; ++e) c.entities.push_back(GenEntity{"E" + std::to_string(e), 1, attrs("a")});

  std::vector<std::vector<std::string>> labels(n_entities);
  std::size_t next_label = 0;
  auto label_for = [&](std::size_t entity, const std::string& avoid) {
    std::vector<std::string> options;
    for (const auto& l : labels[entity])
      if (l != avoid) options.push_back(l);
    if (options.empty() || pick(3) == 0) {
      labels[entity].push_back("L" + std::to_string(next_label++));
      return labels[entity].back();
    }
    return options[pick(options.size())];
  };
  const std::size_t n_rels = 1 + pick(3);
  for (std::size_t r = 0; r < n_rels; ++r) {
    std::size_t a = pick(n_entities), b = pick(n_entities);
    std::string la = label_for(a, "");
    std::string lb = label_for(b, la);
    double density = static_cast<double>(pick(101)) / 100.0;
    c.relationships.push_back(GenRelationship{"R" + std::to_string(r), {c.entities[a].name, la},
                                              {c.entities[b].name, lb}, density,
                                              attrs(("b" + std::to_string(r) + "_").c_str())});
  }

  // Population sizes under the grounding budget over all population variables.
  std::vector<std::size_t> multiplicity(n_entities);
  for (std::size_t e = 0; e < n_entities; ++e) multiplicity[e] = std::max<std::size_t>(1, labels[e].size());
  for (auto& e : c.entities) e.population = 2 + pick(14);
  auto groundings = [&] {
    long double g = 1;
    for (std::size_t e = 0; e < n_entities; ++e)
      for (std::size_t k = 0; k < multiplicity[e]; ++k) g *= static_cast<long double>(c.entities[e].population);
    return g;
  };
  while (groundings() > static_cast<long double>(max_groundings)) {
    auto it = std::max_element(c.entities.begin(), c.entities.end(),
                               [](const GenEntity& x, const GenEntity& y) { return x.population < y.population; });
    --it->population;
  }
  return c;
}

namespace {

/// Grounding evaluator independent of the library's join and index code.
class Grounder {
 public:
  explicit Grounder(const Database& db) : db_(db), s_(db.schema()) {
    links_.resize(s_.num_relationships());
    for (std::size_t r = 0; r < s_.num_relationships(); ++r) {
      const auto& t = db.link_table(r);
      for (std::size_t i = 0; i < t.row_count; ++i) links_[r][{t.endpoints[0][i], t.endpoints[1][i]}] = i;
    }
  }

  /// Link row of a relationship under an assignment, or -1.
  long link_row(std::size_t rel, const std::vector<std::uint32_t>& assign) const {
    const auto& type = s_.relationships()[rel];
    std::uint32_t a = assign.at(*s_.find_population_var(type.endpoints[0].label));
    std::uint32_t b = assign.at(*s_.find_population_var(type.endpoints[1].label));
    auto it = links_[rel].find({a, b});
    return it == links_[rel].end() ? -1 : static_cast<long>(it->second);
  }

  Value value(VarId v, const std::vector<std::uint32_t>& assign) const {
    const auto& var = s_.variable(v);
    switch (var.kind) {
      case VarKind::EntityAttribute:
        return db_.entity_table(var.owner).attributes[var.attribute][assign.at(var.population_vars.at(0))];
      case VarKind::RelationshipIndicator:
        return link_row(var.owner, assign) >= 0 ? kTrue : kFalse;
      case VarKind::RelationshipAttribute: {
        long row = link_row(var.owner, assign);
        return row < 0 ? kNA : db_.link_table(var.owner).attributes[var.attribute][static_cast<std::size_t>(row)];
      }
    }
    return kNA;
  }

  /// Calls f(assignment) for every grounding of `space`; other entries stay 0.
  template <typename F>
  void for_each_grounding(PopSet space, F f) const {
    std::vector<PopVarId> pvs;
    for (PopVarId pv = 0; pv < s_.population_vars().size(); ++pv)
      if (space >> pv & 1u) pvs.push_back(pv);
    std::vector<std::uint32_t> assign(s_.population_vars().size(), 0);
    for (PopVarId pv : pvs)
      if (db_.population_size(pv) == 0) return;
    while (true) {
      f(assign);
      std::size_t i = 0;
      for (; i < pvs.size(); ++i) {
        if (++assign[pvs[i]] < db_.population_size(pvs[i])) break;
        assign[pvs[i]] = 0;
      }
      if (i == pvs.size()) return;
    }
  }

 private:
  const Database& db_;
  const Schema& s_;
  std::vector<std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t>> links_;
};

}  // namespace

ContingencyTable brute_force_ct(const Database& db, const std::vector<VarId>& vars, PopSet space) {
  const Schema& s = db.schema();
  for (VarId v : vars)
    if ((s.population_vars_of(v) & space) != s.population_vars_of(v)) throw Error("variable outside the space");
  Grounder g(db);
  ContingencyTable out(vars);
  std::string key(vars.size(), '\0');
  g.for_each_grounding(space, [&](const std::vector<std::uint32_t>& assign) {
    for (std::size_t i = 0; i < vars.size(); ++i) key[i] = static_cast<char>(g.value(vars[i], assign));
    out.add(key, 1);
  });
  return out;
}

ContingencyTable brute_force_positive_ct(const Database& db, RelSet rels, const std::vector<VarId>& vars) {
  const Schema& s = db.schema();
  Grounder g(db);
  ContingencyTable out(vars);
  std::string key(vars.size(), '\0');
  g.for_each_grounding(s.rel_population_vars(rels), [&](const std::vector<std::uint32_t>& assign) {
    for (std::size_t r = 0; r < s.num_relationships(); ++r)
      if ((rels >> r & 1u) && g.link_row(r, assign) < 0) return;
    for (std::size_t i = 0; i < vars.size(); ++i) key[i] = static_cast<char>(g.value(vars[i], assign));
    out.add(key, 1);
  });
  return out;
}

double bdeu_mpfr(const FamilyCounts& counts, double ess, double structure_prior_log) {
  constexpr mpfr_prec_t kBits = 256;
  mpfr_t q, r, a_j, a_jk, n, t, lg, sum, inner;
  for (mpfr_ptr x : {q, r, a_j, a_jk, n, t, lg, sum, inner}) mpfr_init2(x, kBits);
  int sign = 0;
  mpfr_set_uj(q, counts.q_i, MPFR_RNDN);
  mpfr_set_ui(r, counts.r_i, MPFR_RNDN);
  mpfr_set_d(a_j, ess, MPFR_RNDN);
  mpfr_div(a_j, a_j, q, MPFR_RNDN);
  mpfr_div(a_jk, a_j, r, MPFR_RNDN);
  mpfr_set_d(sum, structure_prior_log, MPFR_RNDN);
  for (std::size_t j = 0; j < counts.n_ij.size(); ++j) {
    mpfr_lgamma(inner, &sign, a_j, MPFR_RNDN);
    mpfr_set_uj(n, counts.n_ij[j], MPFR_RNDN);
    mpfr_add(t, n, a_j, MPFR_RNDN);
    mpfr_lgamma(lg, &sign, t, MPFR_RNDN);
    mpfr_sub(inner, inner, lg, MPFR_RNDN);
    for (Count c : counts.n_ijk[j]) {
      mpfr_set_uj(n, c, MPFR_RNDN);
      mpfr_add(t, n, a_jk, MPFR_RNDN);
      mpfr_lgamma(lg, &sign, t, MPFR_RNDN);
      mpfr_add(inner, inner, lg, MPFR_RNDN);
      mpfr_lgamma(lg, &sign, a_jk, MPFR_RNDN);
      mpfr_sub(inner, inner, lg, MPFR_RNDN);
    }
    mpfr_add(sum, sum, inner, MPFR_RNDN);
  }
  double out = mpfr_get_d(sum, MPFR_RNDN);
  for (mpfr_ptr x : {q, r, a_j, a_jk, n, t, lg, sum, inner}) mpfr_clear(x);
  return out;
}

std::vector<const LatticePoint*> all_points(const RelationshipLattice& lattice) {
  std::vector<const LatticePoint*> out;
  for (const auto& p : lattice.entity_points()) out.push_back(&p);
  for (const auto& p : lattice.points()) out.push_back(&p);
  return out;
}

}  // namespace relct::testing
