#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "coprime_lab/check_status.hpp"
#include "coprime_lab/coprime_action.hpp"

namespace cplab {

enum class SpecialKind { ASpecial, GammaASpecial };

/// How a member was first obtained.  Degree-base members only set `centralizer`
/// (the index j of A_j).  A-special: [J_left, J_right] ∩ C_G(A_centralizer).
/// gamma: [J_left, C_G(A_inner)] ∩ C_G(A_centralizer).
struct Recipe {
  std::optional<std::size_t> left;
  std::optional<std::size_t> right;
  std::optional<std::size_t> inner;
  std::size_t centralizer = 0;
  /// How many recipes collapsed onto this member after deduplication.
  std::size_t multiplicity = 1;
};

struct SpecialFamily {
  SpecialKind kind = SpecialKind::ASpecial;
  int degree = 0;
  std::vector<Group> members;
  std::vector<Recipe> provenance;  // parallel to members
};

/// Families indexed from their lowest degree (0 for A-special, 1 for gamma).
struct SpecialLattice {
  SpecialKind kind = SpecialKind::ASpecial;
  std::vector<ASubgroupDescriptor> maximal;  // A_1..A_s
  std::vector<Group> centralizers;           // C_G(A_j)
  std::vector<SpecialFamily> families;

  int min_degree() const noexcept { return kind == SpecialKind::ASpecial ? 0 : 1; }
  int max_degree() const noexcept { return min_degree() + static_cast<int>(families.size()) - 1; }
  bool has_degree(int d) const noexcept { return d >= min_degree() && d <= max_degree(); }
  const SpecialFamily& at_degree(int d) const;
};

inline constexpr int kDefaultASpecialDegree = 4;
inline constexpr int kDefaultGammaDegree = 6;
inline constexpr std::size_t kDefaultMemberCeiling = 4096;

SpecialLattice a_special_lattice(const ActionSetup& setup, int max_degree = kDefaultASpecialDegree,
                                 std::size_t member_ceiling = kDefaultMemberCeiling);
SpecialLattice gamma_a_special_lattice(const ActionSetup& setup, int max_degree = kDefaultGammaDegree,
                                       std::size_t member_ceiling = kDefaultMemberCeiling);

/// Every member of degree i is inside some member of degree i - 1.
bool check_aspecial_containment(const SpecialLattice& lattice);
/// <members of degree i> == G^(i) (A-special) or gamma_i(G) (gamma).
bool check_aspecial_generation(const ActionSetup& setup, const SpecialLattice& lattice);

struct DegreeWitness {
  int degree = 0;
  std::size_t member = 0;
  ASubgroupDescriptor b;
  int codim = 0;
};

struct DegreeBoundResult {
  CheckResult result;
  std::vector<DegreeWitness> witnesses;
  std::vector<int> skipped_degrees;  // degrees outside the hypothesis
};

/// For every member H of an applicable degree i, searches B <= A with
/// |A/B| <= p^(2^i) and H <= C_G(B)^(i) (gamma: |A/B| <= p^i, H <= gamma_i(C_G(B))).
DegreeBoundResult check_aspecial_degree_bound(const ActionSetup& setup, const SpecialLattice& lattice);

/// R == <R ∩ H : H A-special of degree d> for an A-invariant Sylow r-subgroup R of G^(d).
bool check_sylow_generation(const ActionSetup& setup, const SpecialLattice& lattice, int d, std::uint64_t r);

struct CommutatorMode {
  SpecialKind kind = SpecialKind::ASpecial;
  int d = 0;  // only read for A-special
};

/// [C_G(A_j), H, ..., H] (c + 1 copies of H) is trivial for every j and every
/// member H of degree d (A-special) or k - 2 (gamma).
bool check_key_commutator_relation(const ActionSetup& setup, const SpecialLattice& lattice, int c,
                                   CommutatorMode mode);

}  // namespace cplab
