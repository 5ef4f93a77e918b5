#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "coprime_lab/perm.hpp"

namespace cplab {

/// Base and strong generating set built by the deterministic Schreier-Sims
/// algorithm, with explicit transversals at every level.
class StabilizerChain {
 public:
  struct Level {
    Perm::Point base_point = 0;
    std::vector<Perm> generators;       // strong generators fixing earlier base points
    std::vector<Perm::Point> orbit;     // fundamental orbit of base_point
    std::vector<std::int32_t> position; // point -> index into orbit, -1 if absent
    std::vector<Perm> transversal;      // transversal[i] maps base_point to orbit[i]
    std::vector<Perm> transversal_inv;
  };

  StabilizerChain() = default;
  explicit StabilizerChain(std::size_t degree) : degree_(degree) {}

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Level>& levels() const noexcept { return levels_; }
  std::vector<Perm::Point> base() const;

  /// Product of fundamental orbit lengths.
  std::uint64_t order() const;

  bool contains(const Perm& g) const;

  /// Extends the chain so that it describes the group generated by the old
  /// group and `g`.  Returns false when `g` was already a member.
  bool add_generator(const Perm& g);

  /// Canonical representative of the right coset (this group) * x.
  Perm canonical_coset_rep(const Perm& x) const;

  /// Every element exactly once, via products of transversal elements.
  std::vector<Perm> enumerate() const;

 private:
  std::pair<Perm, std::size_t> strip(Perm g, std::size_t from) const;
  void extend_orbit(std::size_t level);
  void append_level(Perm::Point base_point);
  void complete_from(std::size_t level);

  std::size_t degree_ = 0;
  std::vector<Level> levels_;
  // Schreier generators (orbit index, generator index) already verified per level.
  std::vector<std::set<std::pair<std::size_t, std::size_t>>> tested_;
};

}  // namespace cplab
