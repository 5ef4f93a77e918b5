#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace cplab {

/// A permutation of {0, ..., n-1} stored as its image array.
///
/// Composition follows the right-action convention used throughout the
/// library: `(a * b)[x] == b[a[x]]`, i.e. `a` is applied first.  With this
/// convention the commutator is `[a, b] = a^-1 b^-1 a b` and conjugation is
/// `a^b = b^-1 a b`.
class Perm {
 public:
  using Point = std::uint32_t;

  Perm() = default;

  /// Identity permutation of the given degree.
  explicit Perm(std::size_t degree);

  /// Throws ValidationError unless `images` is a permutation of 0..n-1.
  explicit Perm(std::vector<Point> images);

  /// Product of the given cycles on `degree` points.
  static Perm from_cycles(std::size_t degree,
                          std::initializer_list<std::initializer_list<Point>> cycles);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator[](Point x) const noexcept { return images_[x]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  Perm inverse() const;
  Perm pow(long long exponent) const;
  std::uint64_t order() const;

  /// Smallest point moved, or degree() when this is the identity.
  Point first_moved_point() const noexcept;

  Perm operator*(const Perm& rhs) const;
  Perm& operator*=(const Perm& rhs);

  friend bool operator==(const Perm&, const Perm&) = default;
  friend std::strong_ordering operator<=>(const Perm& a, const Perm& b) {
    return a.images_ <=> b.images_;
  }

 private:
  std::vector<Point> images_;
};

/// `a^-1 b^-1 a b`.
Perm commutator(const Perm& a, const Perm& b);

/// `g^-1 x g`.
Perm conjugate(const Perm& x, const Perm& g);

std::ostream& operator<<(std::ostream& os, const Perm& p);

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
};

}  // namespace cplab
