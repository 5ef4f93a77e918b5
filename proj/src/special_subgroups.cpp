#include "coprime_lab/special_subgroups.hpp"

#include <string>

#include "coprime_lab/errors.hpp"
#include "coprime_lab/series.hpp"

namespace cplab {

namespace {

// Deduplicating collector; equality is equality of element sets.
class MemberSet {
 public:
  explicit MemberSet(std::size_t ceiling) : ceiling_(ceiling) {}

  // Returns the index of h in the set, inserting it if new.
  std::size_t insert(Group h, const Recipe& recipe, std::size_t weight = 1) {
    auto [lo, hi] = by_order_.equal_range(h.order());
    for (auto it = lo; it != hi; ++it) {
      if (h.is_subgroup_of(members_[it->second])) {
        provenance_[it->second].multiplicity += weight;
        return it->second;
      }
    }
    if (members_.size() >= ceiling_)
      throw CapacityError("special subgroup family exceeds the member ceiling of " + std::to_string(ceiling_));
    by_order_.emplace(h.order(), members_.size());
    members_.push_back(std::move(h));
    provenance_.push_back(recipe);
    provenance_.back().multiplicity = weight;
    return members_.size() - 1;
  }

  std::vector<Group>& members() { return members_; }
  std::vector<Recipe>& provenance() { return provenance_; }

 private:
  std::size_t ceiling_;
  std::multimap<std::uint64_t, std::size_t> by_order_;
  std::vector<Group> members_;
  std::vector<Recipe> provenance_;
};

SpecialFamily finish(SpecialKind kind, int degree, MemberSet& set) {
  return SpecialFamily{kind, degree, std::move(set.members()), std::move(set.provenance())};
}

SpecialLattice lattice_base(const ActionSetup& setup, SpecialKind kind, std::size_t ceiling) {
  if (setup.k() < 2) throw PreconditionError("special subgroups need k >= 2");
  SpecialLattice lattice;
  lattice.kind = kind;
  lattice.maximal = maximal_subgroups(setup);
  MemberSet base(ceiling);
  for (std::size_t j = 0; j < lattice.maximal.size(); ++j) {
    lattice.centralizers.push_back(fixed_subgroup(setup, lattice.maximal[j]));
    Recipe r;
    r.centralizer = j;
    base.insert(lattice.centralizers.back(), r);
  }
  lattice.families.push_back(finish(kind, lattice.min_degree(), base));
  return lattice;
}

// Intersects every distinct commutator with every centralizer.
SpecialFamily intersect_level(const SpecialLattice& lattice, int degree, MemberSet& commutators,
                              std::size_t ceiling) {
  MemberSet next(ceiling);
  const auto& comms = commutators.members();
  const auto& recipes = commutators.provenance();
  for (std::size_t c = 0; c < comms.size(); ++c) {
    for (std::size_t n = 0; n < lattice.centralizers.size(); ++n) {
      Recipe r = recipes[c];
      r.centralizer = n;
      next.insert(intersection(comms[c], lattice.centralizers[n]), r, recipes[c].multiplicity);
    }
  }
  return finish(lattice.kind, degree, next);
}

}  // namespace

const SpecialFamily& SpecialLattice::at_degree(int d) const {
  if (!has_degree(d))
    throw PreconditionError("special lattice has no family of degree " + std::to_string(d));
  return families[static_cast<std::size_t>(d - min_degree())];
}

SpecialLattice a_special_lattice(const ActionSetup& setup, int max_degree, std::size_t member_ceiling) {
  SpecialLattice lattice = lattice_base(setup, SpecialKind::ASpecial, member_ceiling);
  const Group& g = setup.group();
  for (int degree = 1; degree <= max_degree; ++degree) {
    const auto& prev = lattice.families.back().members;
    // [J1, J2] = [J2, J1], so unordered pairs suffice.
    MemberSet comms(member_ceiling * member_ceiling);
    for (std::size_t a = 0; a < prev.size(); ++a)
      for (std::size_t b = a; b < prev.size(); ++b) {
        Recipe r;
        r.left = a;
        r.right = b;
        comms.insert(commutator_subgroup(prev[a], prev[b], g), r, a == b ? 1 : 2);
      }
    lattice.families.push_back(intersect_level(lattice, degree, comms, member_ceiling));
  }
  return lattice;
}

SpecialLattice gamma_a_special_lattice(const ActionSetup& setup, int max_degree, std::size_t member_ceiling) {
  SpecialLattice lattice = lattice_base(setup, SpecialKind::GammaASpecial, member_ceiling);
  const Group& g = setup.group();
  for (int degree = 2; degree <= max_degree; ++degree) {
    const auto& prev = lattice.families.back().members;
    MemberSet comms(member_ceiling * lattice.centralizers.size());
    for (std::size_t a = 0; a < prev.size(); ++a)
      for (std::size_t j = 0; j < lattice.centralizers.size(); ++j) {
        Recipe r;
        r.left = a;
        r.inner = j;
        comms.insert(commutator_subgroup(prev[a], lattice.centralizers[j], g), r);
      }
    lattice.families.push_back(intersect_level(lattice, degree, comms, member_ceiling));
  }
  return lattice;
}

bool check_aspecial_containment(const SpecialLattice& lattice) {
  for (std::size_t i = 1; i < lattice.families.size(); ++i) {
    const auto& below = lattice.families[i - 1].members;
    for (const auto& h : lattice.families[i].members) {
      bool found = false;
      for (const auto& j : below)
        if (h.is_subgroup_of(j)) {
          found = true;
          break;
        }
      if (!found) return false;
    }
  }
  return true;
}

bool check_aspecial_generation(const ActionSetup& setup, const SpecialLattice& lattice) {
  const Group& g = setup.group();
  const SeriesResult series =
      lattice.kind == SpecialKind::ASpecial ? derived_series(g) : lower_central_series(g);
  for (const auto& family : lattice.families) {
    Group generated(g.degree());
    for (const auto& h : family.members) generated = join(generated, h);
    if (!(generated == series.at(family.degree))) return false;
  }
  return true;
}

DegreeBoundResult check_aspecial_degree_bound(const ActionSetup& setup, const SpecialLattice& lattice) {
  DegreeBoundResult out;
  const bool derived = lattice.kind == SpecialKind::ASpecial;
  const int k = static_cast<int>(setup.k());
  auto applicable = [&](int i) { return derived ? (1 << i) <= k - 1 : i <= k - 1; };
  auto codim_bound = [&](int i) { return derived ? (1 << i) : i; };

  int widest = 0;
  for (const auto& f : lattice.families)
    if (applicable(f.degree)) widest = std::max(widest, std::min(codim_bound(f.degree), k));
  const auto candidates = subgroups_of_a(setup.p(), setup.k(), widest);

  std::vector<std::optional<SeriesResult>> series(candidates.size());
  auto term = [&](std::size_t idx, int i) -> const Group& {
    if (!series[idx]) {
      const Group cb = fixed_subgroup(setup, candidates[idx]);
      series[idx] = derived ? derived_series(cb) : lower_central_series(cb);
    }
    return series[idx]->at(i);
  };

  for (const auto& family : lattice.families) {
    const int i = family.degree;
    if (!applicable(i)) {
      out.skipped_degrees.push_back(i);
      continue;
    }
    const int bound = codim_bound(i);
    for (std::size_t m = 0; m < family.members.size(); ++m) {
      const Group& h = family.members[m];
      bool found = false;
      for (std::size_t idx = 0; idx < candidates.size() && !found; ++idx) {
        if (candidates[idx].codim > bound) break;
        if (h.is_subgroup_of(term(idx, i))) {
          out.witnesses.push_back({i, m, candidates[idx], candidates[idx].codim});
          found = true;
        }
      }
      if (!found) {
        out.result = CheckResult::fail("no witness B for member " + std::to_string(m) + " of degree " +
                                       std::to_string(i));
        return out;
      }
    }
  }
  if (out.witnesses.empty() && !out.skipped_degrees.empty())
    out.result = CheckResult::not_applicable("no degree satisfies the co-order hypothesis");
  return out;
}

bool check_sylow_generation(const ActionSetup& setup, const SpecialLattice& lattice, int d, std::uint64_t r) {
  if (lattice.kind != SpecialKind::ASpecial)
    throw PreconditionError("check_sylow_generation needs the A-special lattice");
  const auto& family = lattice.at_degree(d);
  const Group gd = derived_series(setup.group()).at(d);
  if (gd.is_trivial()) return true;
  const Group r_sub = invariant_sylow(setup, gd, r);
  Group generated(gd.degree());
  for (const auto& h : family.members) generated = join(generated, intersection(r_sub, h));
  return generated == r_sub;
}

bool check_key_commutator_relation(const ActionSetup& setup, const SpecialLattice& lattice, int c,
                                   CommutatorMode mode) {
  const int k = static_cast<int>(setup.k());
  if (c < 1) throw PreconditionError("check_key_commutator_relation: c must be positive");
  if (mode.kind != lattice.kind) throw PreconditionError("check_key_commutator_relation: lattice kind mismatch");
  int degree = 0;
  if (mode.kind == SpecialKind::ASpecial) {
    if ((1 << mode.d) + 2 > k)
      throw PreconditionError("check_key_commutator_relation: needs 2^d + 2 <= k (d = " + std::to_string(mode.d) +
                              ", k = " + std::to_string(k) + ")");
    degree = mode.d;
  } else {
    if (k < 3) throw PreconditionError("check_key_commutator_relation: gamma mode needs k >= 3");
    degree = k - 2;
  }
  const auto& family = lattice.at_degree(degree);
  for (const auto& cj : lattice.centralizers)
    for (const auto& h : family.members)
      if (!iterated_commutator(cj, h, c + 1).is_trivial()) return false;
  return true;
}

}  // namespace cplab
