#include "coprime_lab/coprime_action.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "coprime_lab/errors.hpp"
#include "coprime_lab/series.hpp"

namespace cplab {

// ---------------------------------------------------------------------------
// Automorphism

Automorphism::Automorphism(std::shared_ptr<const Group> source, std::vector<Perm> images,
                           std::shared_ptr<const std::vector<std::uint32_t>> table,
                           std::optional<std::string> defect)
    : source_(std::move(source)), images_(std::move(images)), table_(std::move(table)), defect_(std::move(defect)) {}

Automorphism::Automorphism(std::shared_ptr<const Group> source, std::vector<Perm> generator_images)
    : source_(std::move(source)), images_(std::move(generator_images)) {
  const Group& g = *source_;
  const auto gens = g.generators();
  if (images_.size() != gens.size()) throw ValidationError("automorphism: wrong number of generator images");
  const auto& els = g.elements();
  const auto n = static_cast<std::uint32_t>(els.size());
  auto table = std::make_shared<std::vector<std::uint32_t>>(n, 0);

  std::vector<std::uint32_t> image_index(images_.size());
  for (std::size_t j = 0; j < images_.size(); ++j) {
    if (images_[j].degree() != g.degree()) throw ValidationError("automorphism: image of the wrong degree");
    auto idx = g.index_of(images_[j]);
    if (!idx) {
      std::ostringstream msg;
      msg << "image of generator " << j << " lies outside the group";
      defect_ = msg.str();
      // Fall back to the identity map so that the table stays usable.
      std::iota(table->begin(), table->end(), 0u);
      table_ = std::move(table);
      return;
    }
    image_index[j] = *idx;
  }
  for (std::uint32_t i = 1; i < n; ++i) {
    const auto parent = g.parent(i);
    const auto gen = g.generator_of(i);
    (*table)[i] = *g.index_of(els[(*table)[parent]] * images_[gen]);
  }
  // Homomorphism: phi(x g) == phi(x) phi(g) for every element x and generator g.
  for (std::uint32_t i = 0; i < n && !defect_; ++i) {
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const auto xg = *g.index_of(els[i] * gens[j]);
      if ((*table)[xg] != *g.index_of(els[(*table)[i]] * images_[j])) {
        std::ostringstream msg;
        msg << "generator images do not define a homomorphism (element " << i << ", generator " << j << ")";
        defect_ = msg.str();
        break;
      }
    }
  }
  if (!defect_) {
    std::vector<char> hit(n, 0);
    for (auto y : *table) hit[y] = 1;
    if (std::find(hit.begin(), hit.end(), 0) != hit.end()) defect_ = "homomorphism is not bijective";
  }
  table_ = std::move(table);
}

Automorphism Automorphism::identity(std::shared_ptr<const Group> source) {
  const auto n = static_cast<std::uint32_t>(source->elements().size());
  auto table = std::make_shared<std::vector<std::uint32_t>>(n);
  std::iota(table->begin(), table->end(), 0u);
  std::vector<Perm> images(source->generators().begin(), source->generators().end());
  return Automorphism(std::move(source), std::move(images), std::move(table), std::nullopt);
}

Perm Automorphism::operator()(const Perm& x) const {
  auto idx = source_->index_of(x);
  if (!idx) throw ContainmentError("automorphism applied to an element outside its group");
  return source_->elements()[(*table_)[*idx]];
}

bool Automorphism::is_identity() const {
  for (std::uint32_t i = 0; i < table_->size(); ++i)
    if ((*table_)[i] != i) return false;
  return true;
}

std::uint64_t Automorphism::order() const {
  std::vector<char> seen(table_->size(), 0);
  std::uint64_t result = 1;
  for (std::uint32_t i = 0; i < table_->size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (auto x = i; !seen[x]; x = (*table_)[x]) {
      seen[x] = 1;
      ++len;
    }
    result = std::lcm(result, len);
  }
  return result;
}

Automorphism Automorphism::then(const Automorphism& other) const {
  auto table = std::make_shared<std::vector<std::uint32_t>>(table_->size());
  for (std::size_t i = 0; i < table_->size(); ++i) (*table)[i] = (*other.table_)[(*table_)[i]];
  std::vector<Perm> images;
  images.reserve(images_.size());
  const auto& els = source_->elements();
  for (const auto& g : source_->generators()) images.push_back(els[(*table)[*source_->index_of(g)]]);
  std::optional<std::string> defect = defect_ ? defect_ : other.defect_;
  return Automorphism(source_, std::move(images), std::move(table), std::move(defect));
}

// ---------------------------------------------------------------------------
// ActionSetup

ActionSetup::ActionSetup(Group g, std::uint32_t p, std::uint32_t k, std::vector<std::vector<Perm>> basis_images)
    : group_(std::make_shared<const Group>(std::move(g))), p_(p), k_(k) {
  if (p < 2) throw ValidationError("p must be at least 2");
  if (k < 1) throw ValidationError("k must be at least 1");
  if (basis_images.size() != k) throw ValidationError("need generator images for each of the k basis vectors");
  std::uint64_t size = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    size *= p;
    if (size > (1u << 16)) throw ValidationError("acting group too large");
  }
  std::vector<Automorphism> basis_autos;
  basis_autos.reserve(k);
  for (auto& images : basis_images) basis_autos.emplace_back(group_, std::move(images));

  phi_.reserve(size);
  phi_.push_back(Automorphism::identity(group_));
  // phi(u) for index u = u_0 + p u_1 + ...; extend one coordinate at a time.
  std::uint64_t block = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    for (std::uint32_t e = 1; e < p; ++e)
      for (std::uint64_t j = 0; j < block; ++j) phi_.push_back(phi_[(e - 1) * block + j].then(basis_autos[i]));
    block *= p;
  }
  // keep the defects of the basis maps visible even when they cancel in products
  for (std::uint32_t i = 0; i < k; ++i) phi_[basis_index(i)] = basis_autos[i];
}

ActionSetup ActionSetup::trivial(Group g, std::uint32_t p, std::uint32_t k) {
  std::vector<Perm> gens(g.generators().begin(), g.generators().end());
  return ActionSetup(std::move(g), p, k, std::vector<std::vector<Perm>>(k, gens));
}

std::uint32_t ActionSetup::basis_index(std::size_t i) const {
  std::uint32_t idx = 1;
  for (std::size_t j = 0; j < i; ++j) idx *= p_;
  return idx;
}

std::uint32_t ActionSetup::index_of(const AVector& u) const {
  if (u.size() != k_) throw ValidationError("exponent vector has the wrong length");
  std::uint32_t idx = 0;
  for (std::size_t i = u.size(); i-- > 0;) {
    const int p = static_cast<int>(p_);
    idx = idx * p_ + static_cast<std::uint32_t>(((u[i] % p) + p) % p);
  }
  return idx;
}

AVector ActionSetup::vector_at(std::uint32_t index) const {
  AVector u(k_);
  for (std::uint32_t i = 0; i < k_; ++i) {
    u[i] = static_cast<int>(index % p_);
    index /= p_;
  }
  return u;
}

std::vector<AVector> ActionSetup::all_elements() const {
  std::vector<AVector> out;
  for (std::uint32_t i = 0; i < a_order(); ++i) out.push_back(vector_at(i));
  return out;
}

std::vector<AVector> ActionSetup::nonidentity_elements() const {
  std::vector<AVector> out;
  for (std::uint32_t i = 1; i < a_order(); ++i) out.push_back(vector_at(i));
  return out;
}

SetupReport validate_setup(const ActionSetup& setup) {
  SetupReport report;
  const auto p = setup.p();
  if (!is_prime(p)) report.violations.push_back("p = " + std::to_string(p) + " is not prime");
  if (setup.group().order() % p == 0) {
    report.violations.push_back("coprimality: p = " + std::to_string(p) + " divides |G| = " +
                                std::to_string(setup.group().order()));
  }
  for (std::uint32_t i = 0; i < setup.k(); ++i) {
    const auto& a = setup.basis(i);
    if (a.defect()) report.violations.push_back("phi(e_" + std::to_string(i) + "): " + *a.defect());
  }
  if (!report.ok()) return report;
  if (!setup.phi(AVector(setup.k(), 0)).is_identity()) report.violations.push_back("phi(0) is not the identity");
  // phi(u) o phi(e_i) == phi(u + e_i) for all u and i covers the homomorphism
  // property on all of A by induction on the coordinates.
  for (std::uint32_t idx = 0; idx < setup.a_order() && report.ok(); ++idx) {
    const AVector u = setup.vector_at(idx);
    for (std::uint32_t i = 0; i < setup.k(); ++i) {
      AVector v = u;
      v[i] = (v[i] + 1) % static_cast<int>(p);
      if (setup.phi(u).then(setup.basis(i)) != setup.phi(v)) {
        std::ostringstream msg;
        msg << "phi is not a homomorphism at u = (";
        for (std::size_t j = 0; j < u.size(); ++j) msg << (j ? "," : "") << u[j];
        msg << "), basis vector " << i;
        report.violations.push_back(msg.str());
        break;
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Subgroups of A

namespace {

std::uint32_t ipow(std::uint32_t p, std::uint32_t k) {
  std::uint32_t r = 1;
  while (k--) r *= p;
  return r;
}

AVector vec_at(std::uint32_t index, std::uint32_t p, std::uint32_t k) {
  AVector u(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    u[i] = static_cast<int>(index % p);
    index /= p;
  }
  return u;
}

std::uint32_t idx_of(const AVector& u, std::uint32_t p) {
  std::uint32_t idx = 0;
  for (std::size_t i = u.size(); i-- > 0;) idx = idx * p + static_cast<std::uint32_t>(((u[i] % int(p)) + int(p)) % int(p));
  return idx;
}

AVector add_scaled(const AVector& a, const AVector& b, int scale, std::uint32_t p) {
  AVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ((a[i] + scale * b[i]) % int(p) + int(p)) % int(p);
  return out;
}

// Membership mask of the span of `vectors` inside (Z/p)^k.
std::vector<char> span_mask(const std::vector<AVector>& vectors, std::uint32_t p, std::uint32_t k) {
  const auto size = ipow(p, k);
  std::vector<char> mask(size, 0);
  std::vector<std::uint32_t> members{0};
  mask[0] = 1;
  for (const auto& v : vectors) {
    const auto old = members.size();
    for (std::size_t m = 0; m < old; ++m) {
      AVector base = vec_at(members[m], p, k);
      for (std::uint32_t t = 1; t < p; ++t) {
        base = add_scaled(base, v, 1, p);
        const auto idx = idx_of(base, p);
        if (!mask[idx]) {
          mask[idx] = 1;
          members.push_back(idx);
        }
      }
    }
  }
  return mask;
}

}  // namespace

std::vector<ASubgroupDescriptor> maximal_subgroups(std::uint32_t p, std::uint32_t k) {
  std::vector<ASubgroupDescriptor> out;
  const auto size = ipow(p, k);
  for (std::uint32_t idx = 1; idx < size; ++idx) {
    const AVector f = vec_at(idx, p, k);
    // normalised functional: first non-zero coordinate equal to 1
    std::size_t pivot = 0;
    while (f[pivot] == 0) ++pivot;
    if (f[pivot] != 1) continue;
    ASubgroupDescriptor b;
    b.codim = 1;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == pivot) continue;
      AVector v(k, 0);
      v[j] = 1;
      v[pivot] = (static_cast<int>(p) - f[j]) % static_cast<int>(p);
      b.vectors.push_back(std::move(v));
    }
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<ASubgroupDescriptor> maximal_subgroups(const ActionSetup& setup) {
  return maximal_subgroups(setup.p(), setup.k());
}

std::vector<ASubgroupDescriptor> subgroups_of_a(std::uint32_t p, std::uint32_t k, int max_codim) {
  const auto size = ipow(p, k);
  // Breadth-first over dimension, starting from the trivial subgroup.
  std::vector<std::vector<std::vector<char>>> masks_by_dim(k + 1);
  std::vector<std::vector<std::vector<AVector>>> bases_by_dim(k + 1);
  std::set<std::vector<char>> seen;
  masks_by_dim[0].push_back(span_mask({}, p, k));
  bases_by_dim[0].push_back({});
  seen.insert(masks_by_dim[0][0]);
  for (std::uint32_t d = 0; d < k; ++d) {
    for (std::size_t s = 0; s < masks_by_dim[d].size(); ++s) {
      for (std::uint32_t idx = 1; idx < size; ++idx) {
        if (masks_by_dim[d][s][idx]) continue;
        auto basis = bases_by_dim[d][s];
        basis.push_back(vec_at(idx, p, k));
        auto mask = span_mask(basis, p, k);
        if (!seen.insert(mask).second) continue;
        masks_by_dim[d + 1].push_back(std::move(mask));
        bases_by_dim[d + 1].push_back(std::move(basis));
      }
    }
  }
  std::vector<ASubgroupDescriptor> out;
  for (int codim = 0; codim <= std::min<int>(max_codim, static_cast<int>(k)); ++codim) {
    const auto dim = k - static_cast<std::uint32_t>(codim);
    for (auto& basis : bases_by_dim[dim]) out.push_back({basis, codim});
  }
  return out;
}

std::vector<AVector> span_members(const ASubgroupDescriptor& b, std::uint32_t p) {
  if (b.vectors.empty()) return {};
  const auto k = static_cast<std::uint32_t>(b.vectors.front().size());
  const auto mask = span_mask(b.vectors, p, k);
  std::vector<AVector> out;
  for (std::uint32_t i = 0; i < mask.size(); ++i)
    if (mask[i]) out.push_back(vec_at(i, p, k));
  return out;
}

ASubgroupDescriptor whole_a(std::uint32_t k) {
  ASubgroupDescriptor b;
  for (std::uint32_t i = 0; i < k; ++i) {
    AVector v(k, 0);
    v[i] = 1;
    b.vectors.push_back(std::move(v));
  }
  return b;
}

ASubgroupDescriptor cyclic_subgroup(const AVector& a, std::uint32_t) {
  ASubgroupDescriptor b;
  b.vectors.push_back(a);
  b.codim = static_cast<int>(a.size()) - (std::all_of(a.begin(), a.end(), [](int x) { return x == 0; }) ? 0 : 1);
  return b;
}

// ---------------------------------------------------------------------------
// Centralizers and coprime-action lemmas

bool is_a_invariant(const ActionSetup& setup, const Group& h) {
  for (std::uint32_t i = 0; i < setup.k(); ++i)
    for (const auto& x : h.generators())
      if (!h.contains(setup.basis(i)(x))) return false;
  return true;
}

Group fixed_subgroup_in(const ActionSetup& setup, const Group& h, const ASubgroupDescriptor& b) {
  const Group& g = setup.group();
  std::vector<const Automorphism*> autos;
  for (const auto& v : b.vectors) autos.push_back(&setup.phi(v));
  std::vector<Perm> fixed;
  auto keep = [&](std::uint32_t gi) {
    for (const auto* a : autos)
      if (a->apply_index(gi) != gi) return false;
    return true;
  };
  if (h.order() == g.order()) {
    const auto& els = g.elements();
    for (std::uint32_t i = 0; i < els.size(); ++i)
      if (keep(i)) fixed.push_back(els[i]);
  } else {
    for (const auto& x : h.elements()) {
      auto gi = g.index_of(x);
      if (!gi) throw ContainmentError("fixed_subgroup_in: subgroup not contained in G");
      if (keep(*gi)) fixed.push_back(x);
    }
  }
  return subgroup_from_elements(g.degree(), fixed);
}

Group fixed_subgroup(const ActionSetup& setup, const ASubgroupDescriptor& b) {
  return fixed_subgroup_in(setup, setup.group(), b);
}

bool check_fg1_quotient(const ActionSetup& setup, const Group& n, const ASubgroupDescriptor& b) {
  const Group& g = setup.group();
  if (!n.is_normal_in(g)) throw PreconditionError("check_fg1_quotient: N is not normal in G");
  if (!is_a_invariant(setup, n)) throw PreconditionError("check_fg1_quotient: N is not A-invariant");
  std::vector<const Automorphism*> autos;
  for (const auto& v : b.vectors) autos.push_back(&setup.phi(v));

  std::set<Perm> fixed_cosets;
  std::set<Perm> visited;
  for (const auto& x : g.elements()) {
    Perm rep = n.canonical_coset_rep(x);
    if (!visited.insert(rep).second) continue;
    bool fixed = true;
    for (const auto* a : autos)
      if (n.canonical_coset_rep((*a)(x)) != rep) {
        fixed = false;
        break;
      }
    if (fixed) fixed_cosets.insert(std::move(rep));
  }
  std::set<Perm> image;
  const Group fixed = fixed_subgroup(setup, b);
  for (const auto& c : fixed.elements()) image.insert(n.canonical_coset_rep(c));
  return image == fixed_cosets;
}

bool check_fg2_generation(const ActionSetup& setup, const Group& h) {
  if (setup.k() < 2) throw PreconditionError("check_fg2_generation: needs k >= 2");
  if (!is_a_invariant(setup, h)) throw PreconditionError("check_fg2_generation: H is not A-invariant");
  std::vector<Group> parts;
  Group generated(h.degree());
  for (const auto& b : maximal_subgroups(setup)) {
    parts.push_back(fixed_subgroup_in(setup, h, b));
    generated = join(generated, parts.back());
  }
  if (!(generated == h)) return false;
  if (!is_nilpotent(h)) return true;

  // Setwise product C_H(A_1) C_H(A_2) ... C_H(A_s), largest factors first.
  std::sort(parts.begin(), parts.end(), [](const Group& a, const Group& b) { return a.order() > b.order(); });
  std::unordered_set<Perm, PermHash> product{h.identity()};
  for (const auto& part : parts) {
    if (product.size() == h.order()) break;
    std::unordered_set<Perm, PermHash> next;
    for (const auto& x : product)
      for (const auto& y : part.elements()) next.insert(x * y);
    product = std::move(next);
  }
  return product.size() == h.order();
}

Group invariant_sylow(const ActionSetup& setup, const Group& h, std::uint64_t r) {
  if (!is_a_invariant(setup, h)) throw PreconditionError("invariant_sylow: H is not A-invariant");
  Group sylow = sylow_subgroup(h, r);
  if (is_a_invariant(setup, sylow)) return sylow;
  std::set<std::vector<Perm>> tried;
  for (const auto& x : h.elements()) {
    Group candidate = conjugate_subgroup(sylow, x);
    // canonical fingerprint: sorted element list of the conjugate
    auto els = candidate.chain().enumerate();
    std::sort(els.begin(), els.end());
    if (!tried.insert(std::move(els)).second) continue;
    if (is_a_invariant(setup, candidate)) return candidate;
  }
  throw InternalError("invariant_sylow: no A-invariant Sylow subgroup among the conjugates");
}

ActionSetup induced_action_on_quotient(const ActionSetup& setup, const Group& n) {
  const Group& g = setup.group();
  if (!n.is_normal_in(g)) throw PreconditionError("induced_action_on_quotient: N is not normal in G");
  if (!is_a_invariant(setup, n)) throw PreconditionError("induced_action_on_quotient: N is not A-invariant");

  std::vector<Perm> reps{n.canonical_coset_rep(g.identity())};
  std::unordered_map<Perm, std::uint32_t, PermHash> index{{reps.front(), 0}};
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (const auto& x : g.generators()) {
      Perm y = n.canonical_coset_rep(reps[i] * x);
      if (index.emplace(y, static_cast<std::uint32_t>(reps.size())).second) reps.push_back(std::move(y));
    }
  const auto m = reps.size();
  auto coset_action = [&](const Perm& x) {
    std::vector<Perm::Point> img(m);
    for (std::size_t i = 0; i < m; ++i) img[i] = index.at(n.canonical_coset_rep(reps[i] * x));
    return Perm(std::move(img));
  };
  std::vector<Perm> quotient_gens;
  std::vector<std::size_t> source_gen;
  for (std::size_t j = 0; j < g.generators().size(); ++j) {
    Perm a = coset_action(g.generators()[j]);
    if (a.is_identity()) continue;
    quotient_gens.push_back(std::move(a));
    source_gen.push_back(j);
  }
  std::vector<std::vector<Perm>> basis_images(setup.k());
  for (std::uint32_t i = 0; i < setup.k(); ++i)
    for (auto j : source_gen) basis_images[i].push_back(coset_action(setup.basis(i)(g.generators()[j])));
  return ActionSetup(Group(m, std::move(quotient_gens)), setup.p(), setup.k(), std::move(basis_images));
}

ActionSetup restrict_action(const ActionSetup& setup, const Group& h) {
  if (!h.is_subgroup_of(setup.group())) throw ContainmentError("restrict_action: subgroup not contained in G");
  if (!is_a_invariant(setup, h)) throw PreconditionError("restrict_action: subgroup is not A-invariant");
  std::vector<std::vector<Perm>> images;
  for (std::uint32_t t = 0; t < setup.k(); ++t) {
    images.emplace_back();
    for (const auto& x : h.generators()) images.back().push_back(setup.basis(t)(x));
  }
  return ActionSetup(h, setup.p(), setup.k(), std::move(images));
}

}  // namespace cplab
