#include "coprime_lab/lie_ring.hpp"

#include <numeric>
#include <random>
#include <string>

#include "coprime_lab/errors.hpp"
#include "coprime_lab/series.hpp"

namespace cplab {

namespace {

std::string basis_name(int i, std::size_t a) { return "b" + std::to_string(i) + "." + std::to_string(a); }

struct ComponentSpan {
  std::vector<char> mask;
  std::vector<LieVector> gens;
};

// Additive span inside component i; each generator is kept only if it is new.
ComponentSpan span_component(const GradedLieRing& l, int i, const std::vector<LieVector>& vectors) {
  const auto& comp = l.component(i);
  ComponentSpan s;
  s.mask.assign(comp.quotient_order(), 0);
  s.mask[0] = 1;
  std::vector<std::uint64_t> elems{0};
  for (const auto& raw : vectors) {
    const LieVector v = comp.normalize(raw);
    if (s.mask[comp.encode(v)]) continue;
    s.gens.push_back(v);
    // elems is a subgroup S; walking the growing list produces S + <v>
    for (std::size_t idx = 0; idx < elems.size(); ++idx) {
      const auto y = comp.encode(l.add(i, comp.decode(elems[idx]), v));
      if (!s.mask[y]) {
        s.mask[y] = 1;
        elems.push_back(y);
      }
    }
  }
  return s;
}

LieSubspace from_vectors(const GradedLieRing& l, const std::vector<std::vector<LieVector>>& vectors) {
  LieSubspace s;
  for (int i = 1; i <= l.component_count(); ++i) {
    const auto& vs = static_cast<std::size_t>(i - 1) < vectors.size() ? vectors[i - 1] : std::vector<LieVector>{};
    auto span = span_component(l, i, vs);
    s.member.push_back(std::move(span.mask));
    s.gens.push_back(std::move(span.gens));
  }
  return s;
}

std::vector<LieVector> members_of(const GradedLieRing& l, int i, const std::vector<char>& mask) {
  std::vector<LieVector> out;
  for (std::uint64_t e = 0; e < mask.size(); ++e)
    if (mask[e]) out.push_back(l.component(i).decode(e));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// GradedLieRing

GradedLieRing::GradedLieRing(Group g, std::vector<AbelianSection> components)
    : group_(std::move(g)), components_(std::move(components)) {}

LieVector GradedLieRing::add(int i, const LieVector& x, const LieVector& y) const {
  const auto& orders = component(i).orders();
  LieVector out(x.size());
  for (std::size_t a = 0; a < x.size(); ++a) out[a] = static_cast<int>((x[a] + y[a]) % static_cast<int>(orders[a]));
  return out;
}

LieVector GradedLieRing::scale(int i, const LieVector& x, int n) const {
  const auto& orders = component(i).orders();
  LieVector out(x.size());
  for (std::size_t a = 0; a < x.size(); ++a) {
    const long long o = orders[a];
    out[a] = static_cast<int>(((static_cast<long long>(x[a]) * n) % o + o) % o);
  }
  return out;
}

bool GradedLieRing::is_zero(const LieVector& x) const {
  return std::all_of(x.begin(), x.end(), [](int v) { return v == 0; });
}

LieVector GradedLieRing::basis_vector(int i, std::size_t a) const {
  LieVector v = zero(i);
  v.at(a) = 1;
  return v;
}

const LieVector& GradedLieRing::structure_constant(int i, std::size_t a, int j, std::size_t b) const {
  return table_.at(static_cast<std::size_t>(i - 1)).at(static_cast<std::size_t>(j - 1)).at(a * dim(j) + b);
}

LieVector GradedLieRing::bracket(int i, const LieVector& x, int j, const LieVector& y) const {
  if (i + j > component_count()) return {};
  const int t = i + j;
  const auto& orders = component(t).orders();
  std::vector<long long> acc(dim(t), 0);
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (!x[a]) continue;
    for (std::size_t b = 0; b < y.size(); ++b) {
      if (!y[b]) continue;
      const long long coeff = static_cast<long long>(x[a]) * y[b];
      const auto& c = structure_constant(i, a, j, b);
      for (std::size_t e = 0; e < c.size(); ++e) acc[e] = (acc[e] + (coeff % orders[e]) * c[e]) % orders[e];
    }
  }
  LieVector out(acc.size());
  for (std::size_t e = 0; e < acc.size(); ++e) out[e] = static_cast<int>(acc[e]);
  return out;
}

LieVector GradedLieRing::group_bracket(int i, const LieVector& x, int j, const LieVector& y) const {
  if (i + j > component_count()) return {};
  const Perm c = commutator(component(i).recompose(x), component(j).recompose(y));
  return component(i + j).decompose(c);
}

// ---------------------------------------------------------------------------
// Construction and axioms

GradedLieRing lie_ring_of(const Group& g, const LieRingOptions& options) {
  const SeriesResult lcs = lower_central_series(g);
  if (!lcs.class_or_length) throw PreconditionError("lie_ring_of: the group is not nilpotent");
  const int c = *lcs.class_or_length;
  std::vector<AbelianSection> comps;
  for (int i = 1; i <= c; ++i) comps.emplace_back(lcs.at(i), lcs.at(i + 1));
  GradedLieRing l(g, std::move(comps));

  l.table_.assign(static_cast<std::size_t>(c), std::vector<std::vector<LieVector>>(static_cast<std::size_t>(c)));
  for (int i = 1; i <= c; ++i)
    for (int j = 1; i + j <= c; ++j) {
      auto& cell = l.table_[i - 1][j - 1];
      const auto& bi = l.component(i).basis();
      const auto& bj = l.component(j).basis();
      for (std::size_t a = 0; a < bi.size(); ++a)
        for (std::size_t b = 0; b < bj.size(); ++b) {
          try {
            cell.push_back(l.component(i + j).decompose(commutator(bi[a], bj[b])));
          } catch (const ContainmentError&) {
            cell.push_back(l.zero(i + j));  // reported by the grading check
          }
        }
    }

  if (options.mutation) {
    const auto& m = *options.mutation;
    if (m.i < 1 || m.j < 1 || m.i + m.j > c || m.a >= l.dim(m.i) || m.b >= l.dim(m.j) || m.coord >= l.dim(m.i + m.j))
      throw ValidationError("structure mutation does not address an existing constant");
    auto& v = l.table_[m.i - 1][m.j - 1][m.a * l.dim(m.j) + m.b];
    v[m.coord] += m.delta;
    v = l.component(m.i + m.j).normalize(v);
  }

  l.axioms_ = check_axioms(l, options.random_pairs, options.seed);
  if (!l.axioms_.ok() && !options.allow_invalid) {
    std::string msg = "lie_ring_of: axiom check failed";
    for (const auto& f : l.axioms_.failures) msg += "; " + f;
    throw InternalError(msg);
  }
  return l;
}

AxiomReport check_axioms(const GradedLieRing& l, std::size_t random_pairs, std::uint64_t seed) {
  AxiomReport r;
  const int c = l.component_count();
  auto note = [&](bool& flag, std::string what) {
    if (r.failures.size() < 16) r.failures.push_back(std::move(what));
    flag = false;
  };

  // grading: commutators of lifts land in gamma_{i+j}, and vanish past the class
  for (int i = 1; i <= c; ++i)
    for (int j = 1; j <= c; ++j)
      for (std::size_t a = 0; a < l.dim(i); ++a)
        for (std::size_t b = 0; b < l.dim(j); ++b) {
          const Perm x = commutator(l.component(i).basis()[a], l.component(j).basis()[b]);
          const bool inside = i + j <= c ? l.component(i + j).numerator().contains(x) : x.is_identity();
          if (!inside) note(r.graded, "grading: [" + basis_name(i, a) + "," + basis_name(j, b) + "]");
        }

  for (int i = 1; i <= c; ++i)
    for (int j = 1; i + j <= c; ++j)
      for (std::size_t a = 0; a < l.dim(i); ++a)
        for (std::size_t b = 0; b < l.dim(j); ++b) {
          const auto& xy = l.structure_constant(i, a, j, b);
          const auto tag = "[" + basis_name(i, a) + "," + basis_name(j, b) + "]";
          // alternating and antisymmetric
          if (i == j && a == b && !l.is_zero(xy)) note(r.alternating, "alternating: " + tag + " != 0");
          if (!l.is_zero(l.add(i + j, xy, l.structure_constant(j, b, i, a))))
            note(r.alternating, "antisymmetry: " + tag);
          // well defined on Z/o_a x Z/o_b
          if (!l.is_zero(l.scale(i + j, xy, static_cast<int>(l.component(i).orders()[a]))) ||
              !l.is_zero(l.scale(i + j, xy, static_cast<int>(l.component(j).orders()[b]))))
            note(r.bilinear, "order: " + tag);
          if (l.group_bracket(i, l.basis_vector(i, a), j, l.basis_vector(j, b)) != xy)
            note(r.matches_group, "group commutator: " + tag);
          // additivity in the first argument, against the group
          for (std::size_t a2 = a; a2 < l.dim(i); ++a2) {
            const LieVector sum = l.add(i, l.basis_vector(i, a), l.basis_vector(i, a2));
            const LieVector expect = l.add(i + j, xy, l.structure_constant(i, a2, j, b));
            if (l.bracket(i, sum, j, l.basis_vector(j, b)) != expect ||
                l.group_bracket(i, sum, j, l.basis_vector(j, b)) != expect)
              note(r.bilinear, "additivity: [" + basis_name(i, a) + "+" + basis_name(i, a2) + "," + basis_name(j, b) + "]");
          }
        }

  // Jacobi over basis triples whose total degree is in range
  for (int i = 1; i <= c; ++i)
    for (int j = 1; i + j < c; ++j)
      for (int k = 1; i + j + k <= c; ++k)
        for (std::size_t a = 0; a < l.dim(i); ++a)
          for (std::size_t b = 0; b < l.dim(j); ++b)
            for (std::size_t e = 0; e < l.dim(k); ++e) {
              const auto x = l.basis_vector(i, a), y = l.basis_vector(j, b), z = l.basis_vector(k, e);
              const int t = i + j + k;
              LieVector s = l.bracket(i + j, l.bracket(i, x, j, y), k, z);
              s = l.add(t, s, l.bracket(j + k, l.bracket(j, y, k, z), i, x));
              s = l.add(t, s, l.bracket(k + i, l.bracket(k, z, i, x), j, y));
              if (!l.is_zero(s))
                note(r.jacobi, "jacobi: " + basis_name(i, a) + "," + basis_name(j, b) + "," + basis_name(k, e));
            }

  // random lifted pairs
  std::mt19937_64 rng(seed);
  if (c >= 2)
    for (std::size_t n = 0; n < random_pairs; ++n) {
      const int i = std::uniform_int_distribution<int>(1, c - 1)(rng);
      const int j = std::uniform_int_distribution<int>(1, c - i)(rng);
      auto pick = [&](int deg) {
        const auto& comp = l.component(deg);
        return comp.decode(std::uniform_int_distribution<std::uint64_t>(0, comp.quotient_order() - 1)(rng));
      };
      const LieVector x = pick(i), y = pick(j);
      if (l.bracket(i, x, j, y) != l.group_bracket(i, x, j, y)) note(r.matches_group, "random pair mismatch");
    }
  return r;
}

// ---------------------------------------------------------------------------
// Subspaces

std::uint64_t LieSubspace::size(int i) const {
  const auto& m = member.at(static_cast<std::size_t>(i - 1));
  return static_cast<std::uint64_t>(std::count(m.begin(), m.end(), 1));
}

bool LieSubspace::is_zero() const {
  return std::all_of(gens.begin(), gens.end(), [](const auto& g) { return g.empty(); });
}

LieSubspace zero_subspace(const GradedLieRing& l) { return from_vectors(l, {}); }

LieSubspace whole_ring(const GradedLieRing& l) {
  std::vector<std::vector<LieVector>> vs;
  for (int i = 1; i <= l.component_count(); ++i) {
    vs.emplace_back();
    for (std::size_t a = 0; a < l.dim(i); ++a) vs.back().push_back(l.basis_vector(i, a));
  }
  LieSubspace s = from_vectors(l, vs);
  s.bracket_closed = true;
  return s;
}

LieSubspace span_of(const GradedLieRing& l, const std::vector<std::vector<LieVector>>& vectors) {
  return from_vectors(l, vectors);
}

LieSubspace subspace_sum(const GradedLieRing& l, const LieSubspace& a, const LieSubspace& b) {
  std::vector<std::vector<LieVector>> vs(a.gens);
  for (std::size_t i = 0; i < vs.size(); ++i) vs[i].insert(vs[i].end(), b.gens[i].begin(), b.gens[i].end());
  return from_vectors(l, vs);
}

LieSubspace subspace_intersection(const GradedLieRing& l, const LieSubspace& a, const LieSubspace& b) {
  std::vector<std::vector<LieVector>> vs;
  for (int i = 1; i <= l.component_count(); ++i) {
    std::vector<char> both(a.member[i - 1].size());
    for (std::size_t e = 0; e < both.size(); ++e) both[e] = a.member[i - 1][e] && b.member[i - 1][e];
    vs.push_back(members_of(l, i, both));
  }
  return from_vectors(l, vs);
}

LieSubspace bracket_span(const GradedLieRing& l, const LieSubspace& a, const LieSubspace& b) {
  const int c = l.component_count();
  std::vector<std::vector<LieVector>> vs(static_cast<std::size_t>(c));
  for (int i = 1; i <= c; ++i)
    for (int j = 1; i + j <= c; ++j)
      for (const auto& x : a.gens[i - 1])
        for (const auto& y : b.gens[j - 1]) vs[i + j - 1].push_back(l.bracket(i, x, j, y));
  return from_vectors(l, vs);
}

bool is_subspace_of(const LieSubspace& a, const LieSubspace& b) {
  for (std::size_t i = 0; i < a.member.size(); ++i)
    for (std::size_t e = 0; e < a.member[i].size(); ++e)
      if (a.member[i][e] && !b.member[i][e]) return false;
  return true;
}

LieSubspace generated_subalgebra(const GradedLieRing& l, const LieSubspace& s) {
  LieSubspace cur = s;
  while (true) {
    LieSubspace next = subspace_sum(l, cur, bracket_span(l, cur, cur));
    if (next == cur) break;
    cur = std::move(next);
  }
  cur.bracket_closed = true;
  return cur;
}

LieSubspace lie_subring_of_subgroup(const GradedLieRing& l, const Group& h) {
  if (!h.is_subgroup_of(l.group())) throw ContainmentError("lie_subring_of_subgroup: H is not contained in G");
  std::vector<std::vector<LieVector>> vs;
  for (int i = 1; i <= l.component_count(); ++i) {
    const auto& comp = l.component(i);
    vs.emplace_back();
    const Group part = intersection(h, comp.numerator());
    for (const auto& x : part.generators()) vs.back().push_back(comp.decompose(x));
  }
  LieSubspace s = from_vectors(l, vs);
  s.bracket_closed = is_subspace_of(bracket_span(l, s, s), s);
  return s;
}

// ---------------------------------------------------------------------------
// Induced action

LieAction::LieAction(const GradedLieRing& l, const ActionSetup& setup) : ring_(&l), p_(setup.p()) {
  if (!(setup.group() == l.group())) throw PreconditionError("induced_a_action: setup acts on a different group");
  const int c = l.component_count();
  for (std::uint32_t t = 0; t < setup.k(); ++t) {
    images_.emplace_back();
    for (int i = 1; i <= c; ++i) {
      images_.back().emplace_back();
      for (const auto& b : l.component(i).basis()) {
        try {
          images_.back().back().push_back(l.component(i).decompose(setup.basis(t)(b)));
        } catch (const ContainmentError&) {
          throw InternalError("induced_a_action: the action does not preserve gamma_" + std::to_string(i));
        }
      }
    }
  }
  for (std::uint32_t t = 0; t < setup.k() && respects_bracket_; ++t)
    for (int i = 1; i <= c; ++i) {
      // additive bijection: images of the basis span the component
      std::vector<LieVector> imgs = images_[t][i - 1];
      const auto span = span_component(l, i, imgs);
      if (static_cast<std::uint64_t>(std::count(span.mask.begin(), span.mask.end(), 1)) != l.component(i).quotient_order())
        respects_bracket_ = false;
      for (int j = 1; i + j <= c; ++j)
        for (std::size_t a = 0; a < l.dim(i); ++a)
          for (std::size_t b = 0; b < l.dim(j); ++b) {
            const auto lhs = apply_basis(t, i + j, l.structure_constant(i, a, j, b));
            const auto rhs = l.bracket(i, images_[t][i - 1][a], j, images_[t][j - 1][b]);
            if (lhs != rhs) respects_bracket_ = false;
          }
    }
}

LieVector LieAction::apply_basis(std::size_t t, int i, const LieVector& x) const {
  const auto& imgs = images_.at(t).at(static_cast<std::size_t>(i - 1));
  LieVector out = ring_->zero(i);
  for (std::size_t a = 0; a < x.size(); ++a)
    if (x[a]) out = ring_->add(i, out, ring_->scale(i, imgs[a], x[a]));
  return out;
}

LieVector LieAction::apply(const AVector& u, int i, const LieVector& x) const {
  LieVector out = x;
  const int p = static_cast<int>(p_);
  for (std::size_t t = 0; t < u.size(); ++t)
    for (int e = 0; e < ((u[t] % p) + p) % p; ++e) out = apply_basis(t, i, out);
  return out;
}

LieSubspace LieAction::fixed_subspace(const ASubgroupDescriptor& b) const {
  std::vector<std::vector<LieVector>> vs;
  for (int i = 1; i <= ring_->component_count(); ++i) {
    const auto& comp = ring_->component(i);
    vs.emplace_back();
    for (std::uint64_t e = 0; e < comp.quotient_order(); ++e) {
      const LieVector x = comp.decode(e);
      bool fixed = true;
      for (const auto& v : b.vectors)
        if (apply(v, i, x) != x) {
          fixed = false;
          break;
        }
      if (fixed) vs.back().push_back(x);
    }
  }
  LieSubspace s = from_vectors(*ring_, vs);
  s.bracket_closed = true;
  return s;
}

bool LieAction::is_invariant(const LieSubspace& s) const {
  for (std::size_t t = 0; t < images_.size(); ++t)
    for (int i = 1; i <= ring_->component_count(); ++i)
      for (const auto& g : s.gens[i - 1])
        if (!s.contains(i, ring_->component(i).encode(apply_basis(t, i, g)))) return false;
  return true;
}

LieAction induced_a_action(const GradedLieRing& l, const ActionSetup& setup) { return LieAction(l, setup); }

bool check_centralizer_transfer(const LieAction& action, const ActionSetup& setup, const ASubgroupDescriptor& b) {
  return action.fixed_subspace(b) == lie_subring_of_subgroup(action.ring(), fixed_subgroup(setup, b));
}

bool check_centralizer_transfer(const GradedLieRing& l, const ActionSetup& setup, const ASubgroupDescriptor& b) {
  return check_centralizer_transfer(LieAction(l, setup), setup, b);
}

// ---------------------------------------------------------------------------
// Series and span lemma

std::vector<LieSubspace> lie_series(const GradedLieRing& l, LieSeriesKind kind) {
  const LieSubspace whole = whole_ring(l);
  std::vector<LieSubspace> terms{whole};
  while (true) {
    const auto& cur = terms.back();
    LieSubspace next = kind == LieSeriesKind::LowerCentral ? bracket_span(l, cur, whole) : bracket_span(l, cur, cur);
    next.bracket_closed = true;
    if (next == cur) break;
    terms.push_back(std::move(next));
  }
  return terms;
}

int lie_class(const GradedLieRing& l) {
  const auto terms = lie_series(l, LieSeriesKind::LowerCentral);
  int nonzero = 0;
  for (const auto& t : terms)
    if (!t.is_zero()) ++nonzero;
  return nonzero;
}

bool check_class_transfer(const GradedLieRing& l, const Group& g) {
  const auto c = nilpotency_class(g);
  return c && *c == lie_class(l);
}

CheckResult check_span_lemma(const LieAction& action, const std::vector<LieSubspace>& subspaces, SpanMode mode) {
  const GradedLieRing& l = action.ring();
  for (int i = 1; i <= l.component_count(); ++i)
    for (auto o : l.component(i).orders())
      if (o % action.p() == 0) throw PreconditionError("check_span_lemma: pL != L");
  for (std::size_t r = 0; r < subspaces.size(); ++r)
    if (!action.is_invariant(subspaces[r]))
      throw PreconditionError("check_span_lemma: subspace " + std::to_string(r) + " is not A-invariant");

  const LieSubspace whole = whole_ring(l);
  LieSubspace total = zero_subspace(l);
  for (const auto& s : subspaces) total = subspace_sum(l, total, s);
  if (!(generated_subalgebra(l, total) == whole))
    return {CheckStatus::NotGenerating, "the family does not generate L"};

  std::vector<LieSubspace> cents;
  for (const auto& b : maximal_subgroups(action.p(), action.k())) cents.push_back(action.fixed_subspace(b));

  auto covered = [&](const LieSubspace& x) {
    return std::any_of(subspaces.begin(), subspaces.end(), [&](const LieSubspace& r) { return is_subspace_of(x, r); });
  };
  const auto& partners = mode == SpanMode::Pairwise ? subspaces : cents;
  for (std::size_t i = 0; i < subspaces.size(); ++i)
    for (std::size_t j = 0; j < partners.size(); ++j) {
      const LieSubspace br = bracket_span(l, subspaces[i], partners[j]);
      for (std::size_t k = 0; k < cents.size(); ++k)
        if (!covered(subspace_intersection(l, br, cents[k])))
          return {CheckStatus::HypothesisNotMet, "closure fails for (" + std::to_string(i) + "," + std::to_string(j) +
                                                     "," + std::to_string(k) + ")"};
    }
  if (!(total == whole)) return CheckResult::fail("the family generates L but does not span it");
  return CheckResult::pass();
}

}  // namespace cplab
