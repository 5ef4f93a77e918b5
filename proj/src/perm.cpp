#include "coprime_lab/perm.hpp"

#include <numeric>
#include <ostream>
#include <sstream>

#include "coprime_lab/errors.hpp"

namespace cplab {

Perm::Perm(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point{0});
}

Perm::Perm(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    const Point y = images_[i];
    if (y >= images_.size() || seen[y]) {
      std::ostringstream msg;
      msg << "malformed permutation: image " << y << " at position " << i
          << (y >= images_.size() ? " is out of range" : " is repeated");
      throw ValidationError(msg.str());
    }
    seen[y] = 1;
  }
}

Perm Perm::from_cycles(std::size_t degree,
                       std::initializer_list<std::initializer_list<Point>> cycles) {
  Perm result(degree);
  for (const auto& cycle : cycles) {
    std::vector<Point> pts(cycle);
    Perm c(degree);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (pts[i] >= degree) throw ValidationError("cycle point out of range");
      c.images_[pts[i]] = pts[(i + 1) % pts.size()];
    }
    result = result * Perm(std::vector<Point>(c.images_));
  }
  return result;
}

bool Perm::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Perm Perm::inverse() const {
  Perm inv;
  inv.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv.images_[images_[i]] = static_cast<Point>(i);
  return inv;
}

Perm Perm::pow(long long exponent) const {
  Perm base = exponent < 0 ? inverse() : *this;
  unsigned long long e = exponent < 0 ? static_cast<unsigned long long>(-exponent)
                                      : static_cast<unsigned long long>(exponent);
  Perm result(degree());
  while (e) {
    if (e & 1) result *= base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

std::uint64_t Perm::order() const {
  std::vector<char> seen(images_.size(), 0);
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (Point x = static_cast<Point>(i); !seen[x]; x = images_[x]) {
      seen[x] = 1;
      ++len;
    }
    result = std::lcm(result, len);
  }
  return result;
}

Perm::Point Perm::first_moved_point() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return static_cast<Point>(i);
  return static_cast<Point>(images_.size());
}

Perm Perm::operator*(const Perm& rhs) const {
  Perm out;
  out.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out.images_[i] = rhs.images_[images_[i]];
  return out;
}

Perm& Perm::operator*=(const Perm& rhs) {
  for (auto& y : images_) y = rhs.images_[y];
  return *this;
}

Perm commutator(const Perm& a, const Perm& b) { return a.inverse() * b.inverse() * a * b; }

Perm conjugate(const Perm& x, const Perm& g) { return g.inverse() * x * g; }

std::ostream& operator<<(std::ostream& os, const Perm& p) {
  os << '[';
  for (std::size_t i = 0; i < p.degree(); ++i) os << (i ? "," : "") << p[static_cast<Perm::Point>(i)];
  return os << ']';
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (auto y : p.images()) {
    h ^= y;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace cplab
