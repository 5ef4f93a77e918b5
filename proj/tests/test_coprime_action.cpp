#include <doctest.h>

#include "coprime_lab/catalog.hpp"
#include "coprime_lab/coprime_action.hpp"
#include "coprime_lab/errors.hpp"
#include "coprime_lab/series.hpp"
#include "oracle/brute_force.hpp"

using namespace cplab;

namespace {

oracle::ElementSet as_set(const Group& g) { return {g.elements().begin(), g.elements().end()}; }

std::vector<Perm> gens_of(const Group& g) { return {g.generators().begin(), g.generators().end()}; }

std::vector<Perm> inverted(const Group& g) {
  std::vector<Perm> out;
  for (const auto& x : g.generators()) out.push_back(x.inverse());
  return out;
}

// C_3 x C_3 on 6 points with the coordinate swap.
ActionSetup swap_setup() {
  const Group g = catalog::elementary_abelian(3, 2);
  return ActionSetup(g, 2, 1, {{g.generators()[1], g.generators()[0]}});
}

// (Z/2)^2 on C_3 x C_3, e_1 inverts the first factor and e_2 the second.
ActionSetup split_inversion_setup() {
  const Group g = catalog::elementary_abelian(3, 2);
  const auto& x = g.generators();
  return ActionSetup(g, 2, 2, {{x[0].inverse(), x[1]}, {x[0], x[1].inverse()}});
}

}  // namespace

TEST_CASE("validate_setup examples") {
  const Group h = catalog::heisenberg(3);
  CHECK(validate_setup(ActionSetup::trivial(h, 2, 3)).ok());

  const auto even = validate_setup(ActionSetup::trivial(catalog::cyclic(4), 2, 1));
  REQUIRE_FALSE(even.ok());
  CHECK(even.violations.front().find("coprimality") != std::string::npos);

  const Group c = catalog::elementary_abelian(3, 3);
  CHECK(validate_setup(ActionSetup(c, 2, 1, {inverted(c)})).ok());

  // a swap and a one-sided inversion do not commute
  const Group c2 = catalog::elementary_abelian(3, 2);
  const auto& x = c2.generators();
  const ActionSetup noncommuting(c2, 2, 2, {{x[1], x[0]}, {x[0].inverse(), x[1]}});
  CHECK_FALSE(validate_setup(noncommuting).ok());

  // x -> x, y -> x is not injective
  const ActionSetup degenerate(h, 2, 1, {{h.generators()[0], h.generators()[0]}});
  CHECK_FALSE(validate_setup(degenerate).ok());
  // an order-3 map cannot be the action of an element of order 2
  const Group c9 = catalog::cyclic(9);
  const ActionSetup wrong_order(c9, 2, 1, {{c9.generators()[0].pow(4)}});
  CHECK_FALSE(validate_setup(wrong_order).ok());
}

TEST_CASE("automorphism tables agree with the brute-force evaluation") {
  const Group w = catalog::wreath_c3();
  const Perm tau = Perm::from_cycles(9, {{1, 2}, {4, 5}, {7, 8}});
  std::vector<Perm> images;
  for (const auto& g : w.generators()) images.push_back(conjugate(g, tau));
  const Automorphism a(w, images);
  REQUIRE(a.is_automorphism());
  CHECK(a.order() == 2);
  const auto table = oracle::tabulate(9, gens_of(w), images);
  for (const auto& x : w.elements()) CHECK(a(x) == table.at(x));
}

TEST_CASE("maximal_subgroups counts") {
  CHECK(maximal_subgroups(2, 3).size() == 7);
  CHECK(maximal_subgroups(3, 2).size() == 4);
  CHECK(maximal_subgroups(2, 4).size() == 15);
  for (const auto& b : maximal_subgroups(3, 3)) {
    CHECK(b.vectors.size() == 2);
    CHECK(span_members(b, 3).size() == 9);
  }
  // Gaussian binomials for F_2^4: 1, 15, 35, 15, 1
  CHECK(subgroups_of_a(2, 4, 4).size() == 67);
  CHECK(subgroups_of_a(2, 4, 1).size() == 16);
  CHECK(subgroups_of_a(3, 3, 3).size() == 1 + 13 + 13 + 1);
}

TEST_CASE("fixed_subgroup examples") {
  const Group h = catalog::heisenberg(3);
  const auto trivial = ActionSetup::trivial(h, 2, 3);
  for (const auto& b : maximal_subgroups(trivial)) CHECK(fixed_subgroup(trivial, b) == h);

  const Group c = catalog::elementary_abelian(5, 2);
  const ActionSetup inv(c, 2, 1, {inverted(c)});
  CHECK(fixed_subgroup(inv, whole_a(1)).is_trivial());

  const auto swap = swap_setup();
  const Group diag = fixed_subgroup(swap, whole_a(1));
  CHECK(diag.order() == 3);
  const auto table = oracle::tabulate(6, gens_of(swap.group()), swap.basis(0).generator_images());
  CHECK(as_set(diag) == oracle::fixed_points({table}));
}

TEST_CASE("fixed_subgroup contravariance and closure") {
  const Group g = catalog::direct_product(std::vector<Group>{catalog::heisenberg(3), catalog::elementary_abelian(3, 2)});
  const auto& x = g.generators();
  // e_1 inverts x on the Heisenberg factor, e_2 inverts y there, e_3 inverts the abelian factor
  const ActionSetup s(g, 2, 3,
                      {{x[0].inverse(), x[1], x[2], x[3]},
                       {x[0], x[1].inverse(), x[2], x[3]},
                       {x[0], x[1], x[2].inverse(), x[3].inverse()}});
  REQUIRE(validate_setup(s).ok());
  const Group ca = fixed_subgroup(s, whole_a(3));
  for (const auto& a : s.nonidentity_elements()) {
    const Group ga = fixed_subgroup(s, cyclic_subgroup(a, 2));
    CHECK(ca.is_subgroup_of(ga));
    for (const auto& b : maximal_subgroups(s)) {
      const auto members = span_members(b, 2);
      if (std::find(members.begin(), members.end(), a) != members.end())
        CHECK(fixed_subgroup(s, b).is_subgroup_of(ga));
    }
  }
}

TEST_CASE("check_fg1_quotient examples") {
  const auto swap = swap_setup();
  const Group& g = swap.group();
  CHECK(check_fg1_quotient(swap, Group(g.degree()), whole_a(1)));
  CHECK(check_fg1_quotient(swap, g, whole_a(1)));
  const Group diag = fixed_subgroup(swap, whole_a(1));
  CHECK(check_fg1_quotient(swap, diag, whole_a(1)));
  const Group first = group_from_generators(6, {g.generators()[0]});
  CHECK_THROWS_AS(check_fg1_quotient(swap, first, whole_a(1)), PreconditionError);
}

TEST_CASE("check_fg2_generation examples") {
  const Group h = catalog::heisenberg(3);
  const auto trivial = ActionSetup::trivial(h, 2, 3);
  CHECK(check_fg2_generation(trivial, h));

  const auto split = split_inversion_setup();
  const auto maxes = maximal_subgroups(split);
  std::vector<std::uint64_t> orders;
  for (const auto& b : maxes) orders.push_back(fixed_subgroup(split, b).order());
  std::sort(orders.begin(), orders.end());
  CHECK(orders == std::vector<std::uint64_t>{1, 3, 3});
  CHECK(check_fg2_generation(split, split.group()));

  CHECK_THROWS_AS(check_fg2_generation(swap_setup(), swap_setup().group()), PreconditionError);
}

TEST_CASE("invariant_sylow examples") {
  const Group h = catalog::heisenberg(3);
  const auto trivial = ActionSetup::trivial(h, 2, 2);
  CHECK(invariant_sylow(trivial, h, 3) == h);
  CHECK(invariant_sylow(trivial, h, 5).is_trivial());

  const Group nil = catalog::direct_product(std::vector<Group>{catalog::heisenberg(3), catalog::cyclic(5)});
  const auto nil_setup = ActionSetup::trivial(nil, 2, 2);
  const Group s5 = invariant_sylow(nil_setup, nil, 5);
  CHECK(s5.order() == 5);
  for (const auto& x : nil.elements())
    if (x.order() == 5) CHECK(s5.contains(x));

  // F21 with x -> a^-1 (x^sigma) a, an involutive automorphism that moves <b>
  const Group f = catalog::frobenius21();
  const Perm sigma = [] {
    std::vector<Perm::Point> img(7);
    for (Perm::Point i = 0; i < 7; ++i) img[i] = (7 - i) % 7;
    return Perm(std::move(img));
  }();
  const Perm a = f.generators()[0];
  std::vector<Perm> images;
  for (const auto& x : f.generators()) images.push_back(conjugate(conjugate(x, sigma), a));
  const ActionSetup fs(f, 2, 1, {images});
  REQUIRE(validate_setup(fs).ok());
  for (std::uint64_t r : {3u, 7u}) {
    const Group s = invariant_sylow(fs, f, r);
    CHECK(s.order() == prime_part(21, r));
    CHECK(is_a_invariant(fs, s));
  }
}

TEST_CASE("induced_action_on_quotient examples") {
  const auto swap = swap_setup();
  const Group& g = swap.group();
  const auto same = induced_action_on_quotient(swap, Group(g.degree()));
  CHECK(same.group().order() == g.order());
  CHECK(fixed_subgroup(same, whole_a(1)).order() == 3);
  const auto collapsed = induced_action_on_quotient(swap, g);
  CHECK(collapsed.group().is_trivial());

  // Heisenberg group with x -> x^-1, y -> y^-1 (centre fixed)
  const Group h = catalog::heisenberg(3);
  const ActionSetup hs(h, 2, 1, {inverted(h)});
  REQUIRE(validate_setup(hs).ok());
  const Group z = center(h);
  const auto q = induced_action_on_quotient(hs, z);
  CHECK(q.group().order() == 9);
  CHECK(q.group().is_abelian());
  CHECK(validate_setup(q).ok());
  CHECK(fixed_subgroup(q, whole_a(1)).is_trivial());
  CHECK(fixed_subgroup(hs, whole_a(1)) == z);
}
