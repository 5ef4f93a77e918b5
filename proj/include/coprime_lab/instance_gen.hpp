#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coprime_lab/coprime_action.hpp"

namespace cplab {

/// A generated setup with a stable identifier.  `d` is the derived-series
/// index the instance is meant for, when it is meant for one.
struct Instance {
  std::string id;
  std::string family;
  ActionSetup setup;
  std::optional<int> d;
};

/// (Z/q)^n on n disjoint q-cycles with a rank-k elementary abelian p-group of
/// matrices acting linearly.  The matrices are block diagonal in blocks of size
/// ord_p(q) and then conjugated by a random invertible matrix when `conjugate`.
ActionSetup gen_gl_module(std::uint32_t q, std::uint32_t n, std::uint32_t p, std::uint32_t k, std::uint64_t seed,
                          bool conjugate = true);

/// A base group together with commuting automorphisms of order p, given by
/// generator images.
struct CoordinateBlock {
  Group h;
  std::vector<std::vector<Perm>> automorphisms;
};

/// H^(p m) with m = k - |automorphisms| blocks of p coordinates permuted
/// cyclically, and each listed automorphism applied to every coordinate.
/// With m = 0 the group is H itself.
ActionSetup gen_coordinate_permutation(const CoordinateBlock& block, std::uint32_t p, std::uint32_t k);

/// Extraspecial group of order q^(2m+1).  The i-th basis vector (i < m) acts by
/// x_i -> x_i^w, y_i -> y_i^(1/w) for w of order p in F_q^*; basis vector m,
/// if requested, sends every x_i to x_i^w and fixes the y_i.
ActionSetup gen_extraspecial(std::uint32_t q, std::uint32_t m, std::uint32_t p, std::uint32_t k);

/// Direct product with the diagonal action; setups with smaller k are padded
/// with trivially acting basis vectors.
ActionSetup gen_direct_sum(std::span<const ActionSetup> setups);

/// Same group, new acting group (Z/p)^k whose j-th basis vector acts as
/// phi(column j of m).  `m` has setup.k() rows and k columns.
ActionSetup pull_back(const ActionSetup& setup, std::uint32_t k, const std::vector<std::vector<int>>& m);
/// Basis vector i of the setup becomes basis vector first + i of (Z/p)^k.
ActionSetup place(const ActionSetup& setup, std::uint32_t k, std::uint32_t first);

/// Small hand-built actions used by the presets, e.g. "heis3-swap-inv".
ActionSetup named_block(std::string_view name);
std::vector<std::string> named_block_names();

std::vector<std::string> preset_names();
/// Deterministic for a fixed seed.  Throws ValidationError for unknown names.
std::vector<Instance> preset(std::string_view name, std::uint64_t seed = 1);

}  // namespace cplab
