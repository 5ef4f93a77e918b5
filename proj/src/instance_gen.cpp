#include "coprime_lab/instance_gen.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "coprime_lab/catalog.hpp"
#include "coprime_lab/config.hpp"
#include "coprime_lab/errors.hpp"

namespace cplab {

namespace {

using Matrix = std::vector<std::vector<int>>;

Matrix identity_matrix(std::size_t n) {
  Matrix m(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix mul(const Matrix& a, const Matrix& b, int q) {
  const std::size_t n = a.size(), inner = b.size(), cols = b.empty() ? 0 : b[0].size();
  Matrix c(n, std::vector<int>(cols, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < inner; ++t) {
      if (!a[i][t]) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] = (c[i][j] + a[i][t] * b[t][j]) % q;
    }
  return c;
}

int inv_mod(int a, int q) {
  int r = 1;
  for (int e = q - 2, b = a % q; e > 0; e >>= 1, b = b * b % q)
    if (e & 1) r = r * b % q;
  return r;
}

// Rank over F_q by elimination; `inverse` receives a^-1 when a is square and invertible.
std::size_t rank_mod(Matrix a, int q, Matrix* inverse = nullptr) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  Matrix inv = identity_matrix(rows);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::swap(inv[piv], inv[r]);
    const int s = inv_mod(a[r][c], q);
    for (std::size_t j = 0; j < cols; ++j) a[r][j] = a[r][j] * s % q;
    for (std::size_t j = 0; j < rows; ++j) inv[r][j] = inv[r][j] * s % q;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const int f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = ((a[i][j] - f * a[r][j]) % q + q) % q;
      for (std::size_t j = 0; j < rows; ++j) inv[i][j] = ((inv[i][j] - f * inv[r][j]) % q + q) % q;
    }
    ++r;
  }
  if (inverse && r == rows && rows == cols) *inverse = std::move(inv);
  return r;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, int q, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(0, q - 1);
  Matrix m(rows, std::vector<int>(cols));
  for (auto& row : m)
    for (auto& x : row) x = dist(rng);
  return m;
}

std::uint32_t multiplicative_order(std::uint32_t a, std::uint32_t n) {
  std::uint32_t x = a % n, e = 1;
  while (x != 1) {
    x = x * a % n;
    ++e;
  }
  return e;
}

Matrix matrix_pow(Matrix a, std::uint64_t e, int q) {
  Matrix r = identity_matrix(a.size());
  for (; e; e >>= 1, a = mul(a, a, q))
    if (e & 1) r = mul(r, a, q);
  return r;
}

// An element of order p in GL(e, q), found by a seeded search.
Matrix order_p_matrix(std::uint32_t e, std::uint32_t p, int q, std::mt19937_64& rng) {
  if (e == 1) {
    // a primitive root raised to (q-1)/p
    for (int g = 2; g < q; ++g)
      if (multiplicative_order(static_cast<std::uint32_t>(g), static_cast<std::uint32_t>(q)) ==
          static_cast<std::uint32_t>(q - 1)) {
        int w = 1;
        for (int i = 0; i < (q - 1) / static_cast<int>(p); ++i) w = w * g % q;
        return {{w}};
      }
    return {{q - 1}};  // q = 3, p = 2
  }
  const Matrix id = identity_matrix(e);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Matrix x = random_matrix(e, e, q, rng);
    if (rank_mod(x, q) != e) continue;
    Matrix y = x;
    std::uint64_t ord = 1;
    while (y != id) {
      y = mul(y, x, q);
      ++ord;
    }
    if (ord % p == 0) return matrix_pow(x, ord / p, q);
  }
  throw InternalError("no element of order p found in GL(e, q)");
}

std::uint64_t checked_power(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (r > enumeration_cap()) return r;
    r *= base;
  }
  return r;
}

// Image of a vector of exponents over the generators of an abelian group.
Perm word(const std::vector<Perm>& gens, const std::vector<int>& exps, std::size_t degree) {
  Perm out(degree);
  for (std::size_t s = 0; s < gens.size(); ++s)
    if (exps[s]) out *= gens[s].pow(exps[s]);
  return out;
}

std::vector<Perm> generators_of(const Group& g) { return {g.generators().begin(), g.generators().end()}; }

std::vector<Perm> images_under(const Automorphism& a) {
  std::vector<Perm> out;
  for (const auto& g : a.source().generators()) out.push_back(a(g));
  return out;
}

ActionSetup block_from_images(const Group& g, std::uint32_t p, std::vector<std::vector<Perm>> images) {
  const auto k = static_cast<std::uint32_t>(images.size());
  return ActionSetup(g, p, k, std::move(images));
}

ActionSetup conjugation_block(const Group& g, std::uint32_t p, const std::vector<Perm>& conjugators) {
  std::vector<std::vector<Perm>> images;
  for (const auto& t : conjugators) {
    std::vector<Perm> row;
    for (const auto& x : g.generators()) row.push_back(conjugate(x, t));
    images.push_back(std::move(row));
  }
  return block_from_images(g, p, std::move(images));
}

Perm point_map(std::size_t degree, auto f) {
  std::vector<Perm::Point> img(degree);
  for (Perm::Point i = 0; i < degree; ++i) img[i] = static_cast<Perm::Point>(f(i));
  return Perm(std::move(img));
}

}  // namespace

ActionSetup gen_gl_module(std::uint32_t q, std::uint32_t n, std::uint32_t p, std::uint32_t k, std::uint64_t seed,
                          bool conjugate) {
  if (!is_prime(q) || !is_prime(p)) throw GenerationError("gen_gl_module: q and p must be prime");
  if (q == p) throw GenerationError("gen_gl_module: q must differ from p");
  if (n < 1 || k < 1) throw GenerationError("gen_gl_module: n and k must be positive");
  if (checked_power(q, n) > enumeration_cap()) throw CapacityError("gen_gl_module: q^n exceeds the enumeration cap");
  const std::uint32_t e = multiplicative_order(q % p, p);
  const std::uint32_t blocks = n / e;
  if (k > blocks)
    throw GenerationError("gen_gl_module: GL(" + std::to_string(n) + "," + std::to_string(q) +
                          ") has no elementary abelian " + std::to_string(p) + "-subgroup of rank " +
                          std::to_string(k) + " (ord_p(q) = " + std::to_string(e) + ", so the rank is at most " +
                          std::to_string(blocks) + ")");
  std::mt19937_64 rng(seed);
  const int qi = static_cast<int>(q);
  const Matrix x = order_p_matrix(e, p, qi, rng);

  Matrix exps;
  do exps = random_matrix(k, blocks, static_cast<int>(p), rng);
  while (rank_mod(exps, static_cast<int>(p)) != k);

  Matrix conj = identity_matrix(n), conj_inv = identity_matrix(n);
  if (conjugate) {
    do conj = random_matrix(n, n, qi, rng);
    while (rank_mod(conj, qi, &conj_inv) != n);
  }

  const Group g = catalog::elementary_abelian(q, n);
  const auto gens = generators_of(g);
  std::vector<std::vector<Perm>> images;
  for (std::uint32_t i = 0; i < k; ++i) {
    Matrix a = identity_matrix(n);
    for (std::uint32_t b = 0; b < blocks; ++b) {
      const Matrix xb = matrix_pow(x, static_cast<std::uint64_t>(exps[i][b]), qi);
      for (std::uint32_t r = 0; r < e; ++r)
        for (std::uint32_t c = 0; c < e; ++c) a[b * e + r][b * e + c] = xb[r][c];
    }
    a = mul(mul(conj, a, qi), conj_inv, qi);
    std::vector<Perm> row;
    for (std::uint32_t t = 0; t < n; ++t) {
      std::vector<int> column(n);
      for (std::uint32_t s = 0; s < n; ++s) column[s] = a[s][t];
      row.push_back(word(gens, column, g.degree()));
    }
    images.push_back(std::move(row));
  }
  return ActionSetup(g, p, k, std::move(images));
}

ActionSetup gen_coordinate_permutation(const CoordinateBlock& block, std::uint32_t p, std::uint32_t k) {
  const auto autos = static_cast<std::uint32_t>(block.automorphisms.size());
  if (autos > k) throw GenerationError("gen_coordinate_permutation: more automorphisms than k");
  const std::uint32_t m = k - autos;
  const std::uint32_t copies = m == 0 ? 1 : p * m;
  if (checked_power(block.h.order(), copies) > enumeration_cap())
    throw CapacityError("gen_coordinate_permutation: |H|^" + std::to_string(copies) + " exceeds the enumeration cap");

  const std::vector<Group> factors(copies, block.h);
  const Group g = catalog::direct_product(factors);
  const std::size_t hd = block.h.degree(), ng = block.h.generators().size();
  auto lifted = [&](const Perm& x, std::uint32_t copy) { return catalog::shift(x, copy * hd, g.degree()); };

  std::vector<std::vector<Perm>> images;
  for (std::uint32_t b = 0; b < m; ++b) {
    std::vector<Perm> row;
    for (std::uint32_t c = 0; c < copies; ++c) {
      std::uint32_t target = c;
      if (c / p == b) target = b * p + (c % p + 1) % p;
      for (std::size_t s = 0; s < ng; ++s) row.push_back(lifted(block.h.generators()[s], target));
    }
    images.push_back(std::move(row));
  }
  for (const auto& alpha : block.automorphisms) {
    if (alpha.size() != ng) throw ValidationError("gen_coordinate_permutation: automorphism has the wrong arity");
    std::vector<Perm> row;
    for (std::uint32_t c = 0; c < copies; ++c)
      for (std::size_t s = 0; s < ng; ++s) row.push_back(lifted(alpha[s], c));
    images.push_back(std::move(row));
  }
  return ActionSetup(g, p, k, std::move(images));
}

ActionSetup gen_extraspecial(std::uint32_t q, std::uint32_t m, std::uint32_t p, std::uint32_t k) {
  if (!is_prime(q) || q == 2) throw GenerationError("gen_extraspecial: q must be an odd prime");
  if (!is_prime(p) || (q - 1) % p != 0)
    throw GenerationError("gen_extraspecial: needs p | q - 1 for a scalar of order p in F_q^*");
  if (k < 1 || k > m + 1)
    throw GenerationError("gen_extraspecial: diagonal actions realise rank at most m + 1 = " + std::to_string(m + 1));
  if (checked_power(q, 2 * m + 1) > enumeration_cap())
    throw CapacityError("gen_extraspecial: q^(2m+1) exceeds the enumeration cap");
  std::mt19937_64 unused(0);
  const int w = order_p_matrix(1, p, static_cast<int>(q), unused)[0][0];
  const int w_inv = inv_mod(w, static_cast<int>(q));

  const Group g = catalog::extraspecial(q, m);
  const auto& gens = g.generators();  // x_1..x_m, y_1..y_m
  std::vector<std::vector<Perm>> images;
  for (std::uint32_t i = 0; i < std::min(k, m); ++i) {
    std::vector<Perm> row(gens.begin(), gens.end());
    row[i] = gens[i].pow(w);
    row[m + i] = gens[m + i].pow(w_inv);
    images.push_back(std::move(row));
  }
  if (k == m + 1) {
    std::vector<Perm> row(gens.begin(), gens.end());
    for (std::uint32_t i = 0; i < m; ++i) row[i] = gens[i].pow(w);
    images.push_back(std::move(row));
  }
  return ActionSetup(g, p, k, std::move(images));
}

ActionSetup gen_direct_sum(std::span<const ActionSetup> setups) {
  if (setups.empty()) throw ValidationError("gen_direct_sum: no summands");
  if (setups.size() == 1) return setups.front();
  const std::uint32_t p = setups.front().p();
  std::uint32_t k = 0;
  for (const auto& s : setups) {
    if (s.p() != p) throw ValidationError("gen_direct_sum: summands disagree on p");
    k = std::max(k, s.k());
  }
  std::vector<Group> factors;
  for (const auto& s : setups) factors.push_back(s.group());
  std::uint64_t order = 1;
  for (const auto& f : factors) {
    order *= f.order();
    if (order > enumeration_cap()) throw CapacityError("gen_direct_sum: product exceeds the enumeration cap");
  }
  const Group g = catalog::direct_product(factors);

  std::vector<std::vector<Perm>> images(k);
  std::size_t offset = 0;
  for (const auto& s : setups) {
    for (std::uint32_t i = 0; i < k; ++i) {
      const auto src = i < s.k() ? images_under(s.basis(i)) : generators_of(s.group());
      for (const auto& x : src) images[i].push_back(catalog::shift(x, offset, g.degree()));
    }
    offset += s.group().degree();
  }
  return ActionSetup(g, p, k, std::move(images));
}

ActionSetup pull_back(const ActionSetup& setup, std::uint32_t k, const std::vector<std::vector<int>>& m) {
  if (m.size() != setup.k()) throw ValidationError("pull_back: matrix needs one row per old basis vector");
  std::vector<std::vector<Perm>> images;
  for (std::uint32_t j = 0; j < k; ++j) {
    AVector col(setup.k());
    for (std::uint32_t i = 0; i < setup.k(); ++i) {
      if (m[i].size() != k) throw ValidationError("pull_back: matrix row has the wrong length");
      col[i] = m[i][j];
    }
    images.push_back(images_under(setup.phi(col)));
  }
  return ActionSetup(setup.group(), setup.p(), k, std::move(images));
}

ActionSetup place(const ActionSetup& setup, std::uint32_t k, std::uint32_t first) {
  if (first + setup.k() > k) throw ValidationError("place: block does not fit");
  std::vector<std::vector<int>> m(setup.k(), std::vector<int>(k, 0));
  for (std::uint32_t i = 0; i < setup.k(); ++i) m[i][first + i] = 1;
  return pull_back(setup, k, m);
}

std::vector<std::string> named_block_names() {
  return {"c3-inv", "c5-inv", "c7-inv",  "c7-sq",  "c13-cube", "c2sq-rot", "heis3-inv", "heis3-swap-inv",
          "heis5",  "heis7",  "wreath3", "f21",    "d14",      "q8"};
}

ActionSetup named_block(std::string_view name) {
  auto inversion = [](std::uint32_t q) {
    const Group c = catalog::cyclic(q);
    return block_from_images(c, 2, {{c.generators()[0].inverse()}});
  };
  if (name == "c3-inv") return inversion(3);
  if (name == "c5-inv") return inversion(5);
  if (name == "c7-inv") return inversion(7);
  if (name == "c7-sq") {
    const Group c = catalog::cyclic(7);
    return block_from_images(c, 3, {{c.generators()[0].pow(2)}});
  }
  if (name == "c13-cube") {
    const Group c = catalog::cyclic(13);
    return block_from_images(c, 3, {{c.generators()[0].pow(3)}});
  }
  if (name == "c2sq-rot") {
    // (x, y) -> (y, xy) has order 3 on the Klein four-group
    const Group v = catalog::elementary_abelian(2, 2);
    const auto& x = v.generators();
    return block_from_images(v, 3, {{x[1], x[0] * x[1]}});
  }
  if (name == "heis3-inv") {
    const Group h = catalog::heisenberg(3);
    const auto& x = h.generators();
    return block_from_images(h, 2, {{x[0].inverse(), x[1].inverse()}});
  }
  if (name == "heis3-swap-inv") {
    const Group h = catalog::heisenberg(3);
    const auto& x = h.generators();
    return block_from_images(h, 2, {{x[1], x[0]}, {x[0].inverse(), x[1].inverse()}});
  }
  if (name == "heis5") return gen_extraspecial(5, 1, 2, 2);
  if (name == "heis7") return gen_extraspecial(7, 1, 3, 2);
  if (name == "wreath3") {
    // points 3i + j; negate j, and negate i
    const Group w = catalog::wreath_c3();
    const Perm t1 = point_map(9, [](std::uint32_t x) { return 3 * (x / 3) + (3 - x % 3) % 3; });
    const Perm t2 = point_map(9, [](std::uint32_t x) { return 3 * ((3 - x / 3) % 3) + x % 3; });
    return conjugation_block(w, 2, {t1, t2});
  }
  if (name == "f21") {
    const Group f = catalog::frobenius21();
    return conjugation_block(f, 2, {point_map(7, [](std::uint32_t x) { return (7 - x) % 7; })});
  }
  if (name == "d14") {
    const Group d = catalog::dihedral(7);
    const auto& x = d.generators();
    return block_from_images(d, 3, {{x[0].pow(2), x[1]}});
  }
  if (name == "q8") {
    const Group q = catalog::quaternion();
    const auto& x = q.generators();
    return block_from_images(q, 3, {{x[1], x[0] * x[1]}});
  }
  throw ValidationError("unknown block '" + std::string(name) + "'");
}

namespace {

ActionSetup sum(std::initializer_list<ActionSetup> parts) {
  const std::vector<ActionSetup> v(parts);
  return gen_direct_sum(v);
}

ActionSetup at(std::string_view block, std::uint32_t k, std::uint32_t first) {
  return place(named_block(block), k, first);
}

std::vector<Instance> preset_p2k3(std::uint64_t seed) {
  const std::string s = "-s" + std::to_string(seed);
  std::vector<Instance> out;
  auto add = [&](std::string id, std::string family, ActionSetup setup) {
    out.push_back({"p2k3-" + id + s, std::move(family), std::move(setup), 0});
  };
  add("gl3n3", "gl-module", gen_gl_module(3, 3, 2, 3, seed));
  add("gl5n3", "gl-module", gen_gl_module(5, 3, 2, 3, seed + 1));
  add("gl7n3", "gl-module", gen_gl_module(7, 3, 2, 3, seed + 2));
  add("gl3n4", "gl-module", gen_gl_module(3, 4, 2, 3, seed + 3));
  add("heis3+c3", "direct-sum", sum({at("heis3-swap-inv", 3, 0), at("c3-inv", 3, 2)}));
  add("wreath3+c5", "direct-sum", sum({at("wreath3", 3, 0), at("c5-inv", 3, 2)}));
  add("es3m2", "extraspecial", gen_extraspecial(3, 2, 2, 3));
  {
    const ActionSetup inv = named_block("heis3-inv");
    const ActionSetup cp = gen_coordinate_permutation({inv.group(), {images_under(inv.basis(0))}}, 2, 2);
    add("heis3sq+c3", "coordinate-permutation", sum({place(cp, 3, 0), at("c3-inv", 3, 2)}));
  }
  add("f21+heis3", "direct-sum", sum({at("f21", 3, 0), at("heis3-swap-inv", 3, 1)}));
  add("heis5+c3", "direct-sum", sum({at("heis5", 3, 0), at("c3-inv", 3, 2)}));
  add("trivial-heis3", "diagonal-aut", ActionSetup::trivial(catalog::heisenberg(3), 2, 3));
  add("wreath3+heis3-diag", "direct-sum",
      sum({at("wreath3", 3, 0), pull_back(named_block("heis3-inv"), 3, {{1, 0, 1}})}));
  add("f21sq+c7", "direct-sum", sum({at("f21", 3, 0), at("f21", 3, 1), at("c7-inv", 3, 2)}));
  return out;
}

std::vector<Instance> preset_p2k4(std::uint64_t seed) {
  const std::string s = "-s" + std::to_string(seed);
  std::vector<Instance> out;
  auto add = [&](std::string id, std::string family, ActionSetup setup) {
    out.push_back({"p2k4-" + id + s, std::move(family), std::move(setup), 1});
  };
  add("gl3n4", "gl-module", gen_gl_module(3, 4, 2, 4, seed));
  add("gl5n4", "gl-module", gen_gl_module(5, 4, 2, 4, seed + 1));
  add("heis3+c3sq", "direct-sum",
      sum({at("heis3-swap-inv", 4, 0), place(gen_gl_module(3, 2, 2, 2, seed + 2), 4, 2)}));
  add("wreath3+heis3", "direct-sum", sum({at("wreath3", 4, 0), at("heis3-swap-inv", 4, 2)}));
  add("f21+c3cube", "direct-sum", sum({at("f21", 4, 0), place(gen_gl_module(3, 3, 2, 3, seed + 3), 4, 1)}));
  {
    const ActionSetup f = named_block("f21");
    const ActionSetup cp = gen_coordinate_permutation({f.group(), {images_under(f.basis(0))}}, 2, 2);
    add("f21sq+c3sq", "coordinate-permutation",
        sum({place(cp, 4, 0), place(gen_gl_module(3, 2, 2, 2, seed + 4), 4, 2)}));
  }
  add("es3m2+c5", "direct-sum", sum({place(gen_extraspecial(3, 2, 2, 3), 4, 0), at("c5-inv", 4, 3)}));
  add("trivial-wreath3", "diagonal-aut", ActionSetup::trivial(catalog::wreath_c3(), 2, 4));
  add("heis5+heis3", "direct-sum", sum({at("heis5", 4, 0), at("heis3-swap-inv", 4, 2)}));
  add("c7sq+wreath3", "direct-sum", sum({place(gen_gl_module(7, 2, 2, 2, seed + 5), 4, 0), at("wreath3", 4, 2)}));
  return out;
}

std::vector<Instance> preset_p3k3(std::uint64_t seed) {
  const std::string s = "-s" + std::to_string(seed);
  std::vector<Instance> out;
  auto add = [&](std::string id, std::string family, ActionSetup setup) {
    out.push_back({"p3k3-" + id + s, std::move(family), std::move(setup), 0});
  };
  add("gl7n3", "gl-module", gen_gl_module(7, 3, 3, 3, seed));
  add("gl2n6", "gl-module", gen_gl_module(2, 6, 3, 3, seed + 1));
  add("gl13n3", "gl-module", gen_gl_module(13, 3, 3, 3, seed + 2));
  add("q8cube", "direct-sum", sum({at("q8", 3, 0), at("q8", 3, 1), at("q8", 3, 2)}));
  add("d14+q8+c7", "direct-sum", sum({at("d14", 3, 0), at("q8", 3, 1), at("c7-sq", 3, 2)}));
  add("heis7+c7", "direct-sum", sum({at("heis7", 3, 0), at("c7-sq", 3, 2)}));
  add("c2n4+q8", "direct-sum", sum({place(gen_gl_module(2, 4, 3, 2, seed + 3), 3, 0), at("q8", 3, 2)}));
  add("trivial-heis5", "diagonal-aut", ActionSetup::trivial(catalog::heisenberg(5), 3, 3));
  return out;
}

}  // namespace

std::vector<std::string> preset_names() { return {"p2k3", "p2k4", "p3k3", "all"}; }

std::vector<Instance> preset(std::string_view name, std::uint64_t seed) {
  if (name == "p2k3") return preset_p2k3(seed);
  if (name == "p2k4") return preset_p2k4(seed);
  if (name == "p3k3") return preset_p3k3(seed);
  if (name == "all") {
    auto out = preset_p2k3(seed);
    for (auto&& v : {preset_p2k4(seed), preset_p3k3(seed)}) out.insert(out.end(), v.begin(), v.end());
    return out;
  }
  throw ValidationError("unknown preset '" + std::string(name) + "'");
}

}  // namespace cplab
