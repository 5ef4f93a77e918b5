#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "coprime_lab/group.hpp"

namespace cplab {

/// An abelian section numerator/denominator written additively as a direct
/// sum of cyclic groups.  Cosets are identified by the canonical coset
/// representative of the denominator's stabilizer chain.
class AbelianSection {
 public:
  /// Throws PreconditionError unless denominator ⊴ numerator with abelian quotient.
  AbelianSection(Group numerator, Group denominator);

  const Group& numerator() const noexcept { return numerator_; }
  const Group& denominator() const noexcept { return denominator_; }

  const std::vector<Perm>& basis() const noexcept { return basis_; }
  const std::vector<std::uint32_t>& orders() const noexcept { return orders_; }
  std::size_t rank() const noexcept { return basis_.size(); }
  std::uint64_t quotient_order() const noexcept { return coset_exponents_.size(); }

  /// Exponent vector of the coset x·denominator; ContainmentError if x ∉ numerator.
  std::vector<int> decompose(const Perm& x) const;
  /// Product of basis[i]^exps[i] (a coset representative, not canonical).
  Perm recompose(std::span<const int> exps) const;
  Perm canonical(const Perm& x) const { return denominator_.canonical_coset_rep(x); }

  /// Mixed-radix index of an exponent vector, in [0, quotient_order()).
  std::uint64_t encode(std::span<const int> exps) const;
  std::vector<int> decode(std::uint64_t index) const;
  /// Reduces each coordinate modulo the matching basis order.
  std::vector<int> normalize(std::vector<int> exps) const;

 private:
  Group numerator_;
  Group denominator_;
  std::vector<Perm> basis_;
  std::vector<std::uint32_t> orders_;
  std::unordered_map<Perm, std::uint32_t, PermHash> coset_index_;
  std::vector<std::vector<int>> coset_exponents_;
};

AbelianSection abelian_section(const Group& numerator, const Group& denominator);

}  // namespace cplab
