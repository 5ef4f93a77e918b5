#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "coprime_lab/perm.hpp"
#include "coprime_lab/stabilizer_chain.hpp"

namespace cplab {

namespace detail {
struct ElementCache;
}

/// A finite permutation group: generators, a stabilizer chain answering
/// membership, and a lazily built element table when the order is within
/// the enumeration cap.
///
/// Groups are immutable once constructed.  Copies share the element table,
/// which is built at most once and is safe to request from several threads.
class Group {
 public:
  /// Trivial group of the given degree (degree must be at least 1).
  explicit Group(std::size_t degree = 1);

  /// Throws ValidationError on degree 0 or on a generator of the wrong degree.
  Group(std::size_t degree, std::vector<Perm> generators);

  std::size_t degree() const noexcept { return degree_; }
  std::span<const Perm> generators() const noexcept { return generators_; }
  const StabilizerChain& chain() const noexcept { return chain_; }
  std::uint64_t order() const noexcept { return chain_.order(); }
  bool is_trivial() const noexcept { return order() == 1; }

  /// Throws ValidationError on degree mismatch.
  bool contains(const Perm& x) const;
  bool is_subgroup_of(const Group& other) const;
  bool is_normal_in(const Group& ambient) const;
  bool is_abelian() const;

  /// All elements in breadth-first order over the generators, identity first.
  /// Throws CapacityError when the order exceeds enumeration_cap().
  const std::vector<Perm>& elements() const;
  /// Position of x in elements(), or nullopt when x is not a member.
  std::optional<std::uint32_t> index_of(const Perm& x) const;
  /// For elements()[i] with i > 0: elements()[i] == elements()[parent(i)] * generators()[generator_of(i)].
  std::uint32_t parent(std::uint32_t i) const;
  std::uint32_t generator_of(std::uint32_t i) const;

  /// Canonical element of the right coset (this group) * x.
  Perm canonical_coset_rep(const Perm& x) const { return chain_.canonical_coset_rep(x); }

  Perm identity() const { return Perm(degree_); }

  friend bool operator==(const Group& a, const Group& b);

 private:
  const detail::ElementCache& cache() const;

  std::size_t degree_;
  std::vector<Perm> generators_;
  StabilizerChain chain_;
  std::shared_ptr<detail::ElementCache> cache_;
};

/// Group generated by `gens`; validates degree and permutation shape.
Group group_from_generators(std::size_t degree, std::vector<Perm> gens);

bool is_member(const Group& g, const Perm& x);

/// Subgroup generated by the union of the generators of a and b.
Group join(const Group& a, const Group& b);

/// Subgroup generated by an arbitrary collection of elements, keeping only the
/// elements needed to grow the group (so at most log2 |result| generators).
Group subgroup_from_elements(std::size_t degree, std::span<const Perm> elements);

/// Smallest normal subgroup of `ambient` containing `s`.
/// Throws ContainmentError if some element of s lies outside ambient.
Group normal_closure(std::span<const Perm> s, const Group& ambient);

/// [h, k], the subgroup generated by all commutators [x, y] with x in h, y in k.
/// Computed as the normal closure in <h, k> of the generator commutators.
/// Throws ContainmentError if h or k is not inside ambient.
Group commutator_subgroup(const Group& h, const Group& k, const Group& ambient);

/// Iterated commutator [x, h, h, ..., h] with `times` copies of h.
Group iterated_commutator(const Group& x, const Group& h, int times);

/// h ∩ k; enumerates the smaller group and sifts in the larger one.
Group intersection(const Group& h, const Group& k);

/// h^g.
Group conjugate_subgroup(const Group& h, const Perm& g);

}  // namespace cplab

namespace cplab {

/// Largest power of r dividing n.
std::uint64_t prime_part(std::uint64_t n, std::uint64_t r);
/// Distinct prime divisors of n in increasing order.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);
bool is_prime(std::uint64_t n);

/// Some Sylow r-subgroup of g, grown one normalizing r-element at a time.
Group sylow_subgroup(const Group& g, std::uint64_t r);

}  // namespace cplab
