#include <doctest.h>

#include <algorithm>

#include "coprime_lab/catalog.hpp"
#include "coprime_lab/errors.hpp"
#include "coprime_lab/instance_gen.hpp"
#include "coprime_lab/series.hpp"
#include "coprime_lab/special_subgroups.hpp"
#include "oracle/action_oracle.hpp"

using namespace cplab;

namespace {

oracle::ElementSet as_set(const Group& g) { return {g.elements().begin(), g.elements().end()}; }

std::set<oracle::ElementSet> as_sets(const std::vector<Group>& gs) {
  std::set<oracle::ElementSet> out;
  for (const auto& g : gs) out.insert(as_set(g));
  return out;
}

// Brute-force A-special families: every subgroup is an explicit element set.
std::vector<std::set<oracle::ElementSet>> oracle_a_special(const ActionSetup& s, int max_degree) {
  const oracle::ActionOracle o(s);
  std::vector<oracle::ElementSet> cents;
  for (const auto& b : maximal_subgroups(s)) cents.push_back(o.fixed(b));
  std::vector<std::set<oracle::ElementSet>> fams{{cents.begin(), cents.end()}};
  for (int d = 1; d <= max_degree; ++d) {
    std::set<oracle::ElementSet> next;
    for (const auto& j1 : fams.back())
      for (const auto& j2 : fams.back()) {
        const auto c = oracle::commutator_set(o.degree, j1, j2);
        for (const auto& cj : cents) next.insert(oracle::intersect(c, cj));
      }
    fams.push_back(std::move(next));
  }
  return fams;
}

std::vector<std::set<oracle::ElementSet>> oracle_gamma(const ActionSetup& s, int max_degree) {
  const oracle::ActionOracle o(s);
  std::vector<oracle::ElementSet> cents;
  for (const auto& b : maximal_subgroups(s)) cents.push_back(o.fixed(b));
  std::vector<std::set<oracle::ElementSet>> fams{{cents.begin(), cents.end()}};
  for (int d = 2; d <= max_degree; ++d) {
    std::set<oracle::ElementSet> next;
    for (const auto& j : fams.back())
      for (const auto& cj : cents) {
        const auto c = oracle::commutator_set(o.degree, j, cj);
        for (const auto& cn : cents) next.insert(oracle::intersect(c, cn));
      }
    fams.push_back(std::move(next));
  }
  return fams;
}

}  // namespace

TEST_CASE("a_special_lattice examples") {
  const Group w = catalog::wreath_c3();
  const auto trivial = ActionSetup::trivial(w, 2, 3);
  const auto lat = a_special_lattice(trivial, 2);
  REQUIRE(lat.families.size() == 3);
  CHECK(lat.at_degree(0).members.size() == 1);
  CHECK(lat.at_degree(0).members[0] == w);
  REQUIRE(lat.at_degree(1).members.size() == 1);
  CHECK(lat.at_degree(1).members[0] == derived_series(w).at(1));

  const ActionSetup abelian = gen_gl_module(5, 3, 2, 3, 11);
  const auto alat = a_special_lattice(abelian, 3);
  for (int d = 1; d <= 3; ++d)
    for (const auto& h : alat.at_degree(d).members) CHECK(h.is_trivial());

  // swap and inversion on the Heisenberg group of order 27
  const ActionSetup hs = named_block("heis3-swap-inv");
  const auto hlat = a_special_lattice(hs, 2);
  const Group z = center(hs.group());
  for (const auto& h : hlat.at_degree(1).members) CHECK(h.is_subgroup_of(z));
  const auto expected = oracle_a_special(hs, 2);
  for (int d = 0; d <= 2; ++d) CHECK(as_sets(hlat.at_degree(d).members) == expected[d]);
}

TEST_CASE("gamma_a_special_lattice examples") {
  const Group w = catalog::wreath_c3();
  const auto lat = gamma_a_special_lattice(ActionSetup::trivial(w, 2, 3), 4);
  const auto lcs = lower_central_series(w);
  for (int d = 1; d <= 4; ++d) {
    REQUIRE(lat.at_degree(d).members.size() == 1);
    CHECK(lat.at_degree(d).members[0] == lcs.at(d));
  }

  const ActionSetup abelian = gen_gl_module(3, 3, 2, 3, 5);
  const auto alat = gamma_a_special_lattice(abelian, 3);
  for (int d = 2; d <= 3; ++d)
    for (const auto& h : alat.at_degree(d).members) CHECK(h.is_trivial());

  for (const auto& inst : preset("p2k3", 1)) {
    CAPTURE(inst.id);
    const auto a = a_special_lattice(inst.setup, 0);
    const auto g = gamma_a_special_lattice(inst.setup, 1);
    CHECK(as_sets(a.at_degree(0).members) == as_sets(g.at_degree(1).members));
  }
}

TEST_CASE("lattices agree with the brute-force construction") {
  for (const char* name : {"heis3-swap-inv", "wreath3", "f21", "q8", "d14"}) {
    CAPTURE(name);
    ActionSetup s = named_block(name);
    if (s.k() < 2) s = place(s, 2, 0);
    const auto a = a_special_lattice(s, 2);
    const auto ea = oracle_a_special(s, 2);
    for (int d = 0; d <= 2; ++d) CHECK(as_sets(a.at_degree(d).members) == ea[d]);
    const auto g = gamma_a_special_lattice(s, 3);
    const auto eg = oracle_gamma(s, 3);
    for (int d = 1; d <= 3; ++d) CHECK(as_sets(g.at_degree(d).members) == eg[d - 1]);
  }
}

TEST_CASE("family structure invariants") {
  for (const auto& inst : preset("p2k4", 1)) {
    CAPTURE(inst.id);
    const auto& s = inst.setup;
    const oracle::ActionOracle o(s);
    const std::size_t n_max = maximal_subgroups(s).size();
    const std::vector<SpecialLattice> lattices{a_special_lattice(s, 2), gamma_a_special_lattice(s, 3)};
    for (const auto* lat : {&lattices[0], &lattices[1]}) {
      CHECK(lat->families.front().members.size() <= n_max);
      for (std::size_t i = 0; i < lat->families.size(); ++i) {
        const auto& fam = lat->families[i];
        REQUIRE(fam.members.size() == fam.provenance.size());
        // pairwise distinct element sets
        CHECK(as_sets(fam.members).size() == fam.members.size());
        for (const auto& h : fam.members) CHECK(o.invariant(as_set(h)));
        if (i == 0) continue;
        const std::size_t prev = lat->families[i - 1].members.size();
        if (lat->kind == SpecialKind::ASpecial)
          CHECK(fam.members.size() <= n_max * prev * prev);
        else
          CHECK(fam.members.size() <= n_max * n_max * prev);
        // replay each recipe
        for (std::size_t m = 0; m < fam.members.size(); ++m) {
          const auto& r = fam.provenance[m];
          const auto& below = lat->families[i - 1].members;
          const Group& right = lat->kind == SpecialKind::ASpecial ? below.at(*r.right) : lat->centralizers.at(*r.inner);
          const Group replay =
              intersection(commutator_subgroup(below.at(*r.left), right, s.group()), lat->centralizers.at(r.centralizer));
          CHECK(replay == fam.members[m]);
        }
      }
      // generated subgroup is normal and A-invariant
      for (const auto& fam : lat->families) {
        Group gen(s.group().degree());
        for (const auto& h : fam.members) gen = join(gen, h);
        CHECK(gen.is_normal_in(s.group()));
        CHECK(is_a_invariant(s, gen));
      }
    }
  }
}

TEST_CASE("member ceiling") {
  const ActionSetup s = place(named_block("heis3-swap-inv"), 3, 0);
  CHECK_THROWS_AS(a_special_lattice(s, 1, 2), CapacityError);
  CHECK_THROWS_AS(a_special_lattice(named_block("f21"), 1), PreconditionError);
}

TEST_CASE("containment, generation and degree bound") {
  const Group h = catalog::heisenberg(3);
  const auto trivial = ActionSetup::trivial(h, 2, 3);
  const auto base_only = a_special_lattice(trivial, 0);
  CHECK(check_aspecial_containment(base_only));
  CHECK(check_aspecial_generation(trivial, base_only));

  const auto lat = a_special_lattice(trivial, 2);
  CHECK(check_aspecial_containment(lat));
  CHECK(check_aspecial_generation(trivial, lat));
  const auto bound = check_aspecial_degree_bound(trivial, lat);
  CHECK(bound.result.passed());
  // 2^2 > k - 1 = 2, so degree 2 is outside the hypothesis
  CHECK(bound.skipped_degrees == std::vector<int>{2});
  for (const auto& w : bound.witnesses) CHECK(w.codim == 0);

  const ActionSetup k2 = named_block("heis3-swap-inv");
  const auto lat2 = a_special_lattice(k2, 1);
  const auto b2 = check_aspecial_degree_bound(k2, lat2);
  CHECK(b2.result.passed());
  CHECK(b2.skipped_degrees == std::vector<int>{1});
  for (const auto& w : b2.witnesses) CHECK(w.codim <= 1);

  const auto abel = gen_gl_module(7, 3, 2, 3, 2);
  const auto alat = a_special_lattice(abel, 1);
  CHECK(check_aspecial_generation(abel, alat));

  // an unrelated subgroup in place of a member is caught
  auto broken = a_special_lattice(k2, 1);
  broken.families[1].members.push_back(k2.group());
  CHECK_FALSE(check_aspecial_containment(broken));
  CHECK_FALSE(check_aspecial_generation(k2, broken));
}

TEST_CASE("theorem checks hold on the p2k3 preset") {
  for (const auto& inst : preset("p2k3", 3)) {
    CAPTURE(inst.id);
    const auto& s = inst.setup;
    const auto a = a_special_lattice(s, 2);
    const auto g = gamma_a_special_lattice(s, 3);
    CHECK(check_aspecial_containment(a));
    CHECK(check_aspecial_containment(g));
    CHECK(check_aspecial_generation(s, a));
    CHECK(check_aspecial_generation(s, g));
    const auto ba = check_aspecial_degree_bound(s, a);
    CHECK(ba.result.passed());
    for (const auto& w : ba.witnesses) CHECK(w.codim <= (1 << w.degree));
    const auto bg = check_aspecial_degree_bound(s, g);
    CHECK(bg.result.passed());
    for (const auto& w : bg.witnesses) CHECK(w.codim <= w.degree);
    for (int d = 0; d <= 1; ++d)
      for (auto r : prime_divisors(derived_series(s.group()).at(d).order())) CHECK(check_sylow_generation(s, a, d, r));
  }
}

TEST_CASE("check_sylow_generation examples") {
  const Group h = catalog::heisenberg(3);
  const auto trivial = ActionSetup::trivial(h, 2, 2);
  const auto lat = a_special_lattice(trivial, 2);
  CHECK(check_sylow_generation(trivial, lat, 0, 3));
  CHECK(check_sylow_generation(trivial, lat, 2, 3));  // G'' = 1
  CHECK(check_sylow_generation(trivial, lat, 1, 5));
}

TEST_CASE("check_key_commutator_relation") {
  const auto abel = gen_gl_module(3, 3, 2, 3, 4);
  const auto lat = a_special_lattice(abel, 1);
  CHECK(check_key_commutator_relation(abel, lat, 1, {SpecialKind::ASpecial, 0}));
  CHECK_THROWS_AS(check_key_commutator_relation(abel, lat, 1, {SpecialKind::ASpecial, 1}), PreconditionError);

  // trivial action: [G, c+1 G] = gamma_{c+2}(G), trivial once c >= class - 1
  const auto w = ActionSetup::trivial(catalog::wreath_c3(), 2, 3);
  const auto wl = a_special_lattice(w, 0);
  CHECK_FALSE(check_key_commutator_relation(w, wl, 1, {SpecialKind::ASpecial, 0}));
  CHECK(check_key_commutator_relation(w, wl, 2, {SpecialKind::ASpecial, 0}));
  const auto wg = gamma_a_special_lattice(w, 1);
  // degree k - 2 = 1 members are G itself
  CHECK(check_key_commutator_relation(w, wg, 2, {SpecialKind::GammaASpecial, 0}));
  CHECK_FALSE(check_key_commutator_relation(w, wg, 1, {SpecialKind::GammaASpecial, 0}));

  const auto k2 = named_block("heis3-swap-inv");
  const auto g2 = gamma_a_special_lattice(k2, 2);
  CHECK_THROWS_AS(check_key_commutator_relation(k2, g2, 1, {SpecialKind::GammaASpecial, 0}), PreconditionError);
}
