#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "coprime_lab/group.hpp"

// Small permutation groups used as building blocks for instances.
namespace cplab::catalog {

Group cyclic(std::uint32_t n);
/// (Z/q)^n acting on n disjoint q-cycles; generator i is the i-th cycle.
Group elementary_abelian(std::uint32_t q, std::uint32_t n);
/// Extraspecial group of order q^(2m+1) and exponent q (q odd) acting on
/// F_q^(m+1) by (u, v) -> (u + a, v + b.u + c).  Generators x_1..x_m, y_1..y_m
/// in that order; [x_i, y_i] generates the centre.
Group extraspecial(std::uint32_t q, std::uint32_t m);
/// Heisenberg group over F_q on q^2 points: extraspecial(q, 1).
Group heisenberg(std::uint32_t q);
/// C_3 wr C_3 on 9 points: a base 3-cycle and the block-permuting 3-cycle.
Group wreath_c3();
/// C_7 : C_3 on 7 points.
Group frobenius21();
/// Dihedral group of order 2n on n points.
Group dihedral(std::uint32_t n);
/// Quaternion group of order 8 in its regular representation; generators i, j.
Group quaternion();
Group symmetric(std::uint32_t n);
Group alternating(std::uint32_t n);

/// Places p on points [offset, offset + p.degree()) of a larger set.
Perm shift(const Perm& p, std::size_t offset, std::size_t total_degree);

/// Direct product on the disjoint union of the factors' points.
Group direct_product(std::span<const Group> factors);

}  // namespace cplab::catalog
