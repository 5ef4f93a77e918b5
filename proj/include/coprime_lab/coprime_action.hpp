#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coprime_lab/group.hpp"

namespace cplab {

/// Element of A = (Z/p)^k as an exponent vector.
using AVector = std::vector<int>;

/// A subgroup B of A given by a spanning set of exponent vectors.
struct ASubgroupDescriptor {
  std::vector<AVector> vectors;
  int codim = 0;
};

/// An endomorphism of a group given by images of its generators, tabulated
/// on every element.  Construction never throws for a map that fails to be
/// an automorphism; it records the first defect instead so that setup
/// validation can report it.
class Automorphism {
 public:
  Automorphism(std::shared_ptr<const Group> source, std::vector<Perm> generator_images);
  Automorphism(const Group& source, std::vector<Perm> generator_images)
      : Automorphism(std::make_shared<const Group>(source), std::move(generator_images)) {}
  static Automorphism identity(std::shared_ptr<const Group> source);

  const Group& source() const noexcept { return *source_; }
  const std::vector<Perm>& generator_images() const noexcept { return images_; }
  /// Image table on source().elements() indices.
  const std::vector<std::uint32_t>& table() const noexcept { return *table_; }

  bool is_automorphism() const noexcept { return !defect_; }
  const std::optional<std::string>& defect() const noexcept { return defect_; }

  Perm operator()(const Perm& x) const;
  std::uint32_t apply_index(std::uint32_t i) const { return (*table_)[i]; }
  bool is_identity() const;
  /// Order as a map (only meaningful for automorphisms).
  std::uint64_t order() const;

  /// x -> other(this(x)).
  Automorphism then(const Automorphism& other) const;

  friend bool operator==(const Automorphism& a, const Automorphism& b) { return *a.table_ == *b.table_; }

 private:
  Automorphism(std::shared_ptr<const Group> source, std::vector<Perm> images,
               std::shared_ptr<const std::vector<std::uint32_t>> table, std::optional<std::string> defect);

  std::shared_ptr<const Group> source_;
  std::vector<Perm> images_;
  std::shared_ptr<const std::vector<std::uint32_t>> table_;
  std::optional<std::string> defect_;
};

/// A = (Z/p)^k acting on G through phi; phi(u) is tabulated for every u.
class ActionSetup {
 public:
  /// `basis_images[i]` lists the images of G's generators under phi(e_i).
  ActionSetup(Group g, std::uint32_t p, std::uint32_t k, std::vector<std::vector<Perm>> basis_images);
  /// Trivial action of (Z/p)^k.
  static ActionSetup trivial(Group g, std::uint32_t p, std::uint32_t k);

  const Group& group() const noexcept { return *group_; }
  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t k() const noexcept { return k_; }
  std::uint32_t a_order() const noexcept { return static_cast<std::uint32_t>(phi_.size()); }

  /// phi(e_i) for the standard basis vectors.
  const Automorphism& basis(std::size_t i) const { return phi_.at(basis_index(i)); }
  const Automorphism& phi(const AVector& u) const { return phi_.at(index_of(u)); }
  const Automorphism& phi_at(std::uint32_t index) const { return phi_.at(index); }

  Perm apply(const AVector& u, const Perm& x) const { return phi(u)(x); }

  std::uint32_t index_of(const AVector& u) const;
  AVector vector_at(std::uint32_t index) const;
  std::vector<AVector> all_elements() const;
  /// A^#: every non-zero vector.
  std::vector<AVector> nonidentity_elements() const;

 private:
  std::uint32_t basis_index(std::size_t i) const;

  std::shared_ptr<const Group> group_;
  std::uint32_t p_;
  std::uint32_t k_;
  std::vector<Automorphism> phi_;  // indexed by mixed-radix base-p index of u
};

struct SetupReport {
  std::vector<std::string> violations;
  bool ok() const noexcept { return violations.empty(); }
};

SetupReport validate_setup(const ActionSetup& setup);

/// All (p^k - 1)/(p - 1) index-p subgroups of A, each spanned by k - 1 vectors.
std::vector<ASubgroupDescriptor> maximal_subgroups(const ActionSetup& setup);
std::vector<ASubgroupDescriptor> maximal_subgroups(std::uint32_t p, std::uint32_t k);
/// Every subgroup of A with codimension <= max_codim, ordered by codimension.
std::vector<ASubgroupDescriptor> subgroups_of_a(std::uint32_t p, std::uint32_t k, int max_codim);
/// All elements of the span of the descriptor.
std::vector<AVector> span_members(const ASubgroupDescriptor& b, std::uint32_t p);
ASubgroupDescriptor whole_a(std::uint32_t k);
ASubgroupDescriptor cyclic_subgroup(const AVector& a, std::uint32_t p);

/// True when phi(e_i)(h) lies in h for every basis vector.
bool is_a_invariant(const ActionSetup& setup, const Group& h);

/// C_G(B).
Group fixed_subgroup(const ActionSetup& setup, const ASubgroupDescriptor& b);
/// C_H(B) for an A-invariant (or arbitrary) subgroup h of G.
Group fixed_subgroup_in(const ActionSetup& setup, const Group& h, const ASubgroupDescriptor& b);

/// C_{G/N}(B) == C_G(B)N/N, compared coset by coset.
bool check_fg1_quotient(const ActionSetup& setup, const Group& n, const ASubgroupDescriptor& b);
/// H == <C_H(A_1), ..., C_H(A_s)>, and H == C_H(A_1)...C_H(A_s) setwise when H is nilpotent.
bool check_fg2_generation(const ActionSetup& setup, const Group& h);

/// An A-invariant Sylow r-subgroup of the A-invariant subgroup h.
Group invariant_sylow(const ActionSetup& setup, const Group& h, std::uint64_t r);

/// The action restricted to an A-invariant subgroup h.
ActionSetup restrict_action(const ActionSetup& setup, const Group& h);

/// Faithful action of G/N on the cosets of N together with the induced A-action.
ActionSetup induced_action_on_quotient(const ActionSetup& setup, const Group& n);

}  // namespace cplab
