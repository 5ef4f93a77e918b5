#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coprime_lab/abelian_section.hpp"
#include "coprime_lab/check_status.hpp"
#include "coprime_lab/coprime_action.hpp"

namespace cplab {

/// Coordinates of a homogeneous element with respect to a component's basis.
using LieVector = std::vector<int>;

struct AxiomReport {
  bool jacobi = true;
  bool bilinear = true;
  bool alternating = true;
  bool graded = true;
  /// Structure constants agree with commutators of lifted elements.
  bool matches_group = true;
  std::vector<std::string> failures;

  bool ok() const noexcept { return jacobi && bilinear && alternating && graded && matches_group; }
};

/// Fault injection: adds `delta` to coordinate `coord` of [b_a, b_b] for basis
/// element a of component i and b of component j.
struct StructureMutation {
  int i = 1;
  std::size_t a = 0;
  int j = 1;
  std::size_t b = 0;
  std::size_t coord = 0;
  int delta = 1;
};

struct LieRingOptions {
  std::optional<StructureMutation> mutation;
  /// When false, lie_ring_of throws InternalError if an axiom check fails.
  bool allow_invalid = false;
  std::size_t random_pairs = 200;
  std::uint64_t seed = 0x5eed;
};

/// L(G) = sum of gamma_i / gamma_{i+1}; components are numbered from 1.
class GradedLieRing {
 public:
  GradedLieRing(Group g, std::vector<AbelianSection> components);

  const Group& group() const noexcept { return group_; }
  int component_count() const noexcept { return static_cast<int>(components_.size()); }
  const AbelianSection& component(int i) const { return components_.at(static_cast<std::size_t>(i - 1)); }
  std::size_t dim(int i) const { return component(i).rank(); }

  /// [x, y] for x in component i and y in component j; empty when i + j
  /// exceeds the number of components (the bracket lands in 0).
  LieVector bracket(int i, const LieVector& x, int j, const LieVector& y) const;
  const LieVector& structure_constant(int i, std::size_t a, int j, std::size_t b) const;

  LieVector add(int i, const LieVector& x, const LieVector& y) const;
  LieVector scale(int i, const LieVector& x, int n) const;
  LieVector zero(int i) const { return LieVector(dim(i), 0); }
  bool is_zero(const LieVector& x) const;
  LieVector basis_vector(int i, std::size_t a) const;

  /// Bracket of lifts computed in the group, decomposed in component i + j.
  LieVector group_bracket(int i, const LieVector& x, int j, const LieVector& y) const;

  const AxiomReport& axioms() const noexcept { return axioms_; }

 private:
  friend GradedLieRing lie_ring_of(const Group& g, const LieRingOptions& options);

  Group group_;
  std::vector<AbelianSection> components_;
  // table_[i-1][j-1][a * dim(j) + b]
  std::vector<std::vector<std::vector<LieVector>>> table_;
  AxiomReport axioms_;
};

/// PreconditionError unless g is nilpotent.
GradedLieRing lie_ring_of(const Group& g, const LieRingOptions& options = {});

/// Exhaustive axiom checks on structure constants (already run by lie_ring_of).
AxiomReport check_axioms(const GradedLieRing& l, std::size_t random_pairs, std::uint64_t seed);

/// A homogeneous additive subgroup: one subgroup per component.
struct LieSubspace {
  std::vector<std::vector<char>> member;     // [component - 1][encoded element]
  std::vector<std::vector<LieVector>> gens;  // irredundant generators per component
  bool bracket_closed = false;

  bool contains(int i, std::uint64_t encoded) const { return member[static_cast<std::size_t>(i - 1)][encoded] != 0; }
  std::uint64_t size(int i) const;
  bool is_zero() const;
  friend bool operator==(const LieSubspace& a, const LieSubspace& b) { return a.member == b.member; }
};

LieSubspace zero_subspace(const GradedLieRing& l);
LieSubspace whole_ring(const GradedLieRing& l);
/// Additive span of the given homogeneous vectors, indexed by component - 1.
LieSubspace span_of(const GradedLieRing& l, const std::vector<std::vector<LieVector>>& vectors);
LieSubspace subspace_sum(const GradedLieRing& l, const LieSubspace& a, const LieSubspace& b);
LieSubspace subspace_intersection(const GradedLieRing& l, const LieSubspace& a, const LieSubspace& b);
/// [a, b], the additive span of all brackets.
LieSubspace bracket_span(const GradedLieRing& l, const LieSubspace& a, const LieSubspace& b);
LieSubspace generated_subalgebra(const GradedLieRing& l, const LieSubspace& s);
bool is_subspace_of(const LieSubspace& a, const LieSubspace& b);

/// L(G, H) = sum of (H ∩ gamma_i) gamma_{i+1} / gamma_{i+1}.
LieSubspace lie_subring_of_subgroup(const GradedLieRing& l, const Group& h);

/// The action of A on L(G): images of component basis elements under each
/// basis vector of A.
class LieAction {
 public:
  LieAction(const GradedLieRing& l, const ActionSetup& setup);

  LieVector apply_basis(std::size_t t, int i, const LieVector& x) const;
  LieVector apply(const AVector& u, int i, const LieVector& x) const;
  /// C_L(B).
  LieSubspace fixed_subspace(const ASubgroupDescriptor& b) const;
  bool is_invariant(const LieSubspace& s) const;
  /// Additive bijection on each component commuting with the bracket.
  bool respects_bracket() const noexcept { return respects_bracket_; }

  const GradedLieRing& ring() const noexcept { return *ring_; }
  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t k() const noexcept { return static_cast<std::uint32_t>(images_.size()); }

 private:
  const GradedLieRing* ring_;
  std::uint32_t p_;
  std::vector<std::vector<std::vector<LieVector>>> images_;  // [t][i-1][basis]
  bool respects_bracket_ = true;
};

LieAction induced_a_action(const GradedLieRing& l, const ActionSetup& setup);

/// C_L(B) == L(G, C_G(B)) componentwise.
bool check_centralizer_transfer(const GradedLieRing& l, const ActionSetup& setup, const ASubgroupDescriptor& b);
bool check_centralizer_transfer(const LieAction& action, const ActionSetup& setup, const ASubgroupDescriptor& b);

/// Class of L computed from the structure constants.
int lie_class(const GradedLieRing& l);
/// lie_class(L) == nilpotency class of g.
bool check_class_transfer(const GradedLieRing& l, const Group& g);

enum class LieSeriesKind { LowerCentral, Derived };
/// Terms until the series stabilises; the first term is L.
std::vector<LieSubspace> lie_series(const GradedLieRing& l, LieSeriesKind kind);

enum class SpanMode { Pairwise, Gamma };

/// Checks the closure hypothesis on the family; if it holds, checks that the
/// additive span of the family is all of L.  NotGenerating if the family does
/// not generate L as a ring, HypothesisNotMet if closure fails.
/// PreconditionError if a subspace is not A-invariant or pL != L.
CheckResult check_span_lemma(const LieAction& action, const std::vector<LieSubspace>& subspaces, SpanMode mode);

}  // namespace cplab
