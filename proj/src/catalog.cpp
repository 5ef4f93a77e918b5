#include "coprime_lab/catalog.hpp"

#include <array>

#include "coprime_lab/errors.hpp"

namespace cplab::catalog {

using Point = Perm::Point;

Group cyclic(std::uint32_t n) {
  if (n == 0) throw ValidationError("cyclic group of order 0");
  std::vector<Point> img(n);
  for (Point i = 0; i < n; ++i) img[i] = (i + 1) % n;
  return Group(n, {Perm(std::move(img))});
}

Group elementary_abelian(std::uint32_t q, std::uint32_t n) {
  if (n == 0) return Group(1);
  const std::size_t degree = std::size_t{q} * n;
  std::vector<Perm> gens;
  for (std::uint32_t i = 0; i < n; ++i) {
    std::vector<Point> img(degree);
    for (Point x = 0; x < degree; ++x) img[x] = x;
    for (Point j = 0; j < q; ++j) img[i * q + j] = i * q + (j + 1) % q;
    gens.emplace_back(std::move(img));
  }
  return Group(degree, std::move(gens));
}

Group extraspecial(std::uint32_t q, std::uint32_t m) {
  if (q < 3 || q % 2 == 0) throw ValidationError("extraspecial: q must be an odd prime");
  if (m == 0) throw ValidationError("extraspecial: m must be positive");
  // point (u_1..u_m, v) -> index ((u_1 * q + u_2) ... ) * q + v
  std::size_t degree = 1;
  for (std::uint32_t i = 0; i <= m; ++i) degree *= q;
  auto coords = [&](Point x) {
    std::vector<std::uint32_t> c(m + 1);
    for (std::size_t i = m + 1; i-- > 0;) {
      c[i] = x % q;
      x /= q;
    }
    return c;
  };
  auto index = [&](const std::vector<std::uint32_t>& c) {
    Point x = 0;
    for (auto v : c) x = x * q + v;
    return x;
  };
  std::vector<Perm> gens;
  for (std::uint32_t i = 0; i < m; ++i) {
    std::vector<Point> img(degree);
    for (Point x = 0; x < degree; ++x) {
      auto c = coords(x);
      c[i] = (c[i] + 1) % q;
      img[x] = index(c);
    }
    gens.emplace_back(std::move(img));
  }
  for (std::uint32_t i = 0; i < m; ++i) {
    std::vector<Point> img(degree);
    for (Point x = 0; x < degree; ++x) {
      auto c = coords(x);
      c[m] = (c[m] + c[i]) % q;
      img[x] = index(c);
    }
    gens.emplace_back(std::move(img));
  }
  return Group(degree, std::move(gens));
}

Group heisenberg(std::uint32_t q) { return extraspecial(q, 1); }

Group wreath_c3() {
  return Group(9, {Perm::from_cycles(9, {{0, 1, 2}}), Perm::from_cycles(9, {{0, 3, 6}, {1, 4, 7}, {2, 5, 8}})});
}

Group frobenius21() {
  std::vector<Point> a(7), b(7);
  for (Point i = 0; i < 7; ++i) {
    a[i] = (i + 1) % 7;
    b[i] = (2 * i) % 7;
  }
  return Group(7, {Perm(std::move(a)), Perm(std::move(b))});
}

Group dihedral(std::uint32_t n) {
  std::vector<Point> a(n), b(n);
  for (Point i = 0; i < n; ++i) {
    a[i] = (i + 1) % n;
    b[i] = (n - i) % n;
  }
  return Group(n, {Perm(std::move(a)), Perm(std::move(b))});
}

Group quaternion() {
  // Elements 0..7 = 1, -1, i, -i, j, -j, k, -k; encode as (unit, sign).
  static constexpr std::array<std::array<int, 4>, 4> unit_product = {{
      {0, 1, 2, 3},   // 1 * (1, i, j, k)
      {1, 0, 3, 2},   // i * ...  (i*i = -1 -> unit 0 with sign flip below)
      {2, 3, 0, 1},   // j
      {3, 2, 1, 0},   // k
  }};
  static constexpr std::array<std::array<int, 4>, 4> sign_product = {{
      {1, 1, 1, 1},
      {1, -1, 1, -1},   // i*1=i, i*i=-1, i*j=k, i*k=-j
      {1, -1, -1, 1},   // j*1=j, j*i=-k, j*j=-1, j*k=i
      {1, 1, -1, -1},   // k*1=k, k*i=j, k*j=-i, k*k=-1
  }};
  auto mul = [](int a, int b) {
    const int ua = a / 2, ub = b / 2;
    const int sa = (a % 2) ? -1 : 1, sb = (b % 2) ? -1 : 1;
    const int u = unit_product[ua][ub];
    const int s = sa * sb * sign_product[ua][ub];
    return 2 * u + (s < 0 ? 1 : 0);
  };
  auto right_mult = [&](int g) {
    std::vector<Point> img(8);
    for (int x = 0; x < 8; ++x) img[x] = static_cast<Point>(mul(x, g));
    return Perm(std::move(img));
  };
  return Group(8, {right_mult(2), right_mult(4)});
}

Group symmetric(std::uint32_t n) {
  if (n < 2) return Group(std::max<std::uint32_t>(n, 1));
  std::vector<Point> cyc(n);
  for (Point i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
  return Group(n, {Perm(std::move(cyc)), Perm::from_cycles(n, {{0, 1}})});
}

Group alternating(std::uint32_t n) {
  if (n < 3) return Group(std::max<std::uint32_t>(n, 1));
  std::vector<Perm> gens;
  for (Point i = 2; i < n; ++i) gens.push_back(Perm::from_cycles(n, {{0, 1, i}}));
  return Group(n, std::move(gens));
}

Perm shift(const Perm& p, std::size_t offset, std::size_t total_degree) {
  if (offset + p.degree() > total_degree) throw ValidationError("shift: permutation does not fit");
  std::vector<Point> img(total_degree);
  for (Point x = 0; x < total_degree; ++x) img[x] = x;
  for (Point x = 0; x < p.degree(); ++x) img[offset + x] = static_cast<Point>(offset + p[x]);
  return Perm(std::move(img));
}

Group direct_product(std::span<const Group> factors) {
  std::size_t degree = 0;
  for (const auto& f : factors) degree += f.degree();
  if (degree == 0) return Group(1);
  std::vector<Perm> gens;
  std::size_t offset = 0;
  for (const auto& f : factors) {
    for (const auto& g : f.generators()) gens.push_back(shift(g, offset, degree));
    offset += f.degree();
  }
  return Group(degree, std::move(gens));
}

}  // namespace cplab::catalog
