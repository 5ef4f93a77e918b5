#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "coprime_lab/catalog.hpp"
#include "coprime_lab/errors.hpp"
#include "coprime_lab/instance_gen.hpp"
#include "coprime_lab/instance_io.hpp"
#include "coprime_lab/series.hpp"
#include "coprime_lab/special_subgroups.hpp"
#include "oracle/action_oracle.hpp"

using namespace cplab;

namespace {

std::multiset<std::uint64_t> centralizer_orders(const ActionSetup& s) {
  std::multiset<std::uint64_t> out;
  for (const auto& a : s.nonidentity_elements()) out.insert(fixed_subgroup(s, cyclic_subgroup(a, s.p())).order());
  return out;
}

// Restriction of a subgroup of a direct product to the points [lo, lo + n).
Group project(const Group& h, std::size_t lo, std::size_t n) {
  std::vector<Perm> gens;
  for (const auto& x : h.generators()) {
    std::vector<Perm::Point> img(n);
    for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Perm::Point>(x[lo + i] - lo);
    gens.emplace_back(std::move(img));
  }
  return Group(n, std::move(gens));
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("coprime_lab_test_" + name + ".json");
}

}  // namespace

TEST_CASE("gen_gl_module examples") {
  const auto c3 = gen_gl_module(3, 1, 2, 1, 1);
  CHECK(validate_setup(c3).ok());
  const Perm x = c3.group().generators()[0];
  CHECK(c3.basis(0)(x) == x.inverse());

  // all eight sign matrices on C_7^3: centralizer orders 7^(number of +1 entries)
  const auto c7 = gen_gl_module(7, 3, 2, 3, 9);
  CHECK(validate_setup(c7).ok());
  CHECK(centralizer_orders(c7) == std::multiset<std::uint64_t>{1, 7, 7, 7, 49, 49, 49});

  const auto c3n4 = gen_gl_module(3, 4, 2, 4, 2);
  CHECK(validate_setup(c3n4).ok());
  const auto orders = centralizer_orders(c3n4);
  CHECK(orders.count(1) == 1);
  CHECK(orders.count(3) == 4);
  CHECK(orders.count(9) == 6);
  CHECK(orders.count(27) == 4);

  // ord_3(2) = 2: blocks of size 2 in GL(6, 2)
  const auto c2 = gen_gl_module(2, 6, 3, 3, 4);
  CHECK(validate_setup(c2).ok());
  CHECK(c2.group().order() == 64);
  CHECK(fixed_subgroup(c2, whole_a(3)).is_trivial());

  CHECK_THROWS_AS(gen_gl_module(3, 1, 2, 2, 1), GenerationError);
  CHECK_THROWS_AS(gen_gl_module(2, 1, 3, 1, 1), GenerationError);
  CHECK_THROWS_AS(gen_gl_module(3, 3, 3, 1, 1), GenerationError);
  CHECK_THROWS_AS(gen_gl_module(5, 8, 2, 1, 1), CapacityError);
}

TEST_CASE("generation is deterministic in the seed") {
  const auto a = instance_to_json(gen_gl_module(5, 3, 2, 2, 77)).dump();
  const auto b = instance_to_json(gen_gl_module(5, 3, 2, 2, 77)).dump();
  CHECK(a == b);
  for (const auto& name : {"p2k3", "p2k4", "p3k3"}) {
    const auto first = preset(name, 5), second = preset(name, 5);
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
      CHECK(first[i].id == second[i].id);
      CHECK(instance_to_json(first[i].setup) == instance_to_json(second[i].setup));
    }
  }
}

TEST_CASE("gen_coordinate_permutation examples") {
  const Group c3 = catalog::cyclic(3);
  const auto swap = gen_coordinate_permutation({c3, {}}, 2, 1);
  CHECK(swap.group().order() == 9);
  CHECK(fixed_subgroup(swap, whole_a(1)).order() == 3);

  const Group h = catalog::heisenberg(3);
  const auto& x = h.generators();
  const auto inv = gen_coordinate_permutation({h, {{x[0].inverse(), x[1].inverse()}}}, 2, 1);
  CHECK(inv.group() == h);
  CHECK(validate_setup(inv).ok());

  const auto both = gen_coordinate_permutation({h, {{x[0].inverse(), x[1].inverse()}}}, 2, 2);
  CHECK(both.group().order() == 729);
  CHECK(validate_setup(both).ok());
  const oracle::ActionOracle o(both);
  for (const auto& b : maximal_subgroups(both)) CHECK(o.fixed(b).size() == fixed_subgroup(both, b).order());

  // three commuting involutions on Heis27 x C_3^2
  const auto three = gen_direct_sum(std::vector<ActionSetup>{place(named_block("heis3-swap-inv"), 3, 0),
                                                            place(gen_gl_module(3, 2, 2, 1, 3), 3, 2)});
  CHECK(three.k() == 3);
  CHECK(validate_setup(three).ok());

  CHECK_THROWS_AS(gen_coordinate_permutation({catalog::heisenberg(5), {}}, 2, 3), CapacityError);
}

TEST_CASE("gen_extraspecial examples") {
  const auto e1 = gen_extraspecial(3, 1, 2, 1);
  CHECK(validate_setup(e1).ok());
  const Group c = fixed_subgroup(e1, whole_a(1));
  CHECK(c == center(e1.group()));
  const oracle::ActionOracle o(e1);
  CHECK(o.fixed(whole_a(1)).size() == c.order());

  const auto e7 = gen_extraspecial(7, 1, 3, 1);
  CHECK(validate_setup(e7).ok());
  CHECK(e7.group().order() == 343);

  const auto e2 = gen_extraspecial(3, 2, 2, 2);
  CHECK(validate_setup(e2).ok());
  AVector first{1, 0};
  CHECK(fixed_subgroup(e2, cyclic_subgroup(first, 2)).order() == 27);

  const auto full = gen_extraspecial(3, 2, 2, 3);
  CHECK(validate_setup(full).ok());
  CHECK(fixed_subgroup(full, whole_a(3)).is_trivial());

  CHECK_THROWS_AS(gen_extraspecial(3, 1, 2, 3), GenerationError);
  CHECK_THROWS_AS(gen_extraspecial(5, 1, 3, 1), GenerationError);
}

TEST_CASE("gen_direct_sum examples and factorisation") {
  const auto one = named_block("heis3-swap-inv");
  const auto same = gen_direct_sum(std::vector<ActionSetup>{one});
  CHECK(instance_to_json(same) == instance_to_json(one));

  const auto t1 = ActionSetup::trivial(catalog::cyclic(3), 2, 2);
  const auto t2 = ActionSetup::trivial(catalog::cyclic(5), 2, 2);
  const auto tt = gen_direct_sum(std::vector<ActionSetup>{t1, t2});
  for (const auto& a : tt.nonidentity_elements()) CHECK(tt.phi(a).is_identity());

  const auto mixed = gen_direct_sum(std::vector<ActionSetup>{named_block("c3-inv"), ActionSetup::trivial(catalog::cyclic(5), 2, 1)});
  const Group fixed = fixed_subgroup(mixed, whole_a(1));
  CHECK(fixed.order() == 5);

  CHECK_THROWS_AS(gen_direct_sum(std::vector<ActionSetup>{named_block("c3-inv"), named_block("q8")}), ValidationError);

  // fixed points, classes and special members factor across the summands
  const auto f1 = place(named_block("heis3-swap-inv"), 3, 0);
  const auto f2 = place(named_block("wreath3"), 3, 1);
  const auto prod = gen_direct_sum(std::vector<ActionSetup>{f1, f2});
  for (const auto& b : subgroups_of_a(2, 3, 3))
    CHECK(fixed_subgroup(prod, b).order() == fixed_subgroup(f1, b).order() * fixed_subgroup(f2, b).order());
  CHECK(*nilpotency_class(prod.group()) ==
        std::max(*nilpotency_class(f1.group()), *nilpotency_class(f2.group())));

  const auto lp = a_special_lattice(prod, 2);
  const auto l1 = a_special_lattice(f1, 2);
  const auto l2 = a_special_lattice(f2, 2);
  for (int d = 0; d <= 2; ++d)
    for (const auto& h : lp.at_degree(d).members) {
      const Group h1 = project(h, 0, 9), h2 = project(h, 9, 9);
      auto in = [](const Group& x, const SpecialFamily& f) {
        return std::any_of(f.members.begin(), f.members.end(), [&](const Group& m) { return m == x; });
      };
      CHECK(in(h1, l1.at_degree(d)));
      CHECK(in(h2, l2.at_degree(d)));
    }
}

TEST_CASE("pull_back and place") {
  const auto inv = named_block("heis3-inv");
  const auto diag = pull_back(inv, 2, {{1, 1}});
  CHECK(validate_setup(diag).ok());
  CHECK(diag.phi({1, 1}).is_identity());
  CHECK(diag.basis(0) == inv.basis(0));
  const auto placed = place(inv, 3, 2);
  CHECK(placed.basis(0).is_identity());
  CHECK(placed.basis(2) == inv.basis(0));
  CHECK_THROWS_AS(place(inv, 1, 1), ValidationError);
}

TEST_CASE("presets") {
  const auto all = preset("all", 1);
  CHECK(all.size() >= 30);
  std::set<std::string> ids;
  for (const auto& inst : all) {
    CAPTURE(inst.id);
    CHECK(ids.insert(inst.id).second);
    CHECK(validate_setup(inst.setup).ok());
    CHECK(inst.setup.group().order() <= 5000);
  }
  for (const auto& name : named_block_names()) CHECK(validate_setup(named_block(name)).ok());
  CHECK_THROWS_AS(preset("nope"), ValidationError);
}

TEST_CASE("instance files") {
  const auto path = temp_file("roundtrip");
  for (const auto& inst : preset("p2k3", 2)) {
    CAPTURE(inst.id);
    save_instance(path, inst.setup);
    const auto back = load_instance(path);
    CHECK(back.group().order() == inst.setup.group().order());
    CHECK(back.p() == inst.setup.p());
    CHECK(back.k() == inst.setup.k());
    for (const auto& b : maximal_subgroups(back))
      CHECK(fixed_subgroup(back, b).order() == fixed_subgroup(inst.setup, b).order());
    CHECK(instance_to_json(back) == instance_to_json(inst.setup));
  }
  std::filesystem::remove(path);

  using nlohmann::json;
  const Group h = catalog::heisenberg(3);
  json doc = instance_to_json(ActionSetup::trivial(h, 2, 2));
  doc["action"] = json::object();
  CHECK(validate_setup(instance_from_json(doc)).ok());

  json bad = doc;
  bad["p"] = 3;
  bad["k"] = 1;
  try {
    instance_from_json(bad);
    FAIL("expected a coprimality error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("coprim") != std::string::npos);
  }

  json shape = instance_to_json(named_block("heis3-swap-inv"));
  shape["action"]["1,0"]["1"] = json::array({0, 1, 2});
  try {
    instance_from_json(shape);
    FAIL("expected a shape error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("action[\"1,0\"][\"1\"]") != std::string::npos);
  }

  // x -> x^-1, y -> x is not an automorphism
  json hom = instance_to_json(named_block("heis3-swap-inv"));
  hom["action"]["0,1"]["1"] = hom["group"]["generators"][0];
  CHECK_THROWS_AS(instance_from_json(hom), ValidationError);

  // non-basis vectors are checked against the derived action
  json extra = instance_to_json(named_block("heis3-swap-inv"));
  const auto s = named_block("heis3-swap-inv");
  extra["action"]["1,1"]["0"] = s.phi({1, 1})(s.group().generators()[0]).images();
  extra["action"]["1,1"]["1"] = s.phi({1, 1})(s.group().generators()[1]).images();
  CHECK_NOTHROW(instance_from_json(extra));
  extra["action"]["1,1"]["0"] = s.group().generators()[0].images();
  CHECK_THROWS_AS(instance_from_json(extra), ValidationError);

  json schema = doc;
  schema["schema"] = 2;
  CHECK_THROWS_AS(instance_from_json(schema), ValidationError);
  CHECK_THROWS_AS(load_instance(temp_file("does-not-exist")), ValidationError);
}
