#include "coprime_lab/group.hpp"

#include <deque>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "coprime_lab/config.hpp"
#include "coprime_lab/errors.hpp"

namespace cplab {

namespace detail {

struct ElementCache {
  std::once_flag once;
  std::vector<Perm> elements;
  std::vector<std::uint32_t> parent;
  std::vector<std::uint32_t> generator;
  std::unordered_map<Perm, std::uint32_t, PermHash> index;
};

}  // namespace detail

Group::Group(std::size_t degree) : Group(degree, {}) {}

Group::Group(std::size_t degree, std::vector<Perm> generators)
    : degree_(degree), chain_(degree), cache_(std::make_shared<detail::ElementCache>()) {
  if (degree == 0) throw ValidationError("groups of degree 0 are not supported");
  for (auto& g : generators) {
    if (g.degree() != degree) {
      std::ostringstream msg;
      msg << "generator of degree " << g.degree() << " in a group of degree " << degree;
      throw ValidationError(msg.str());
    }
    if (g.is_identity()) continue;
    chain_.add_generator(g);
    generators_.push_back(std::move(g));
  }
}

bool Group::contains(const Perm& x) const { return chain_.contains(x); }

bool Group::is_subgroup_of(const Group& other) const {
  if (degree_ != other.degree_) return false;
  if (order() > other.order() || other.order() % order() != 0) return false;
  for (const auto& g : generators_)
    if (!other.contains(g)) return false;
  return true;
}

bool Group::is_normal_in(const Group& ambient) const {
  if (!is_subgroup_of(ambient)) return false;
  for (const auto& n : generators_)
    for (const auto& g : ambient.generators())
      if (!contains(conjugate(n, g))) return false;
  return true;
}

bool Group::is_abelian() const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    for (std::size_t j = i + 1; j < generators_.size(); ++j)
      if (generators_[i] * generators_[j] != generators_[j] * generators_[i]) return false;
  return true;
}

const detail::ElementCache& Group::cache() const {
  if (order() > enumeration_cap()) {
    std::ostringstream msg;
    msg << "group of order " << order() << " exceeds the enumeration cap " << enumeration_cap();
    throw CapacityError(msg.str());
  }
  std::call_once(cache_->once, [this] {
    auto& c = *cache_;
    const auto n = static_cast<std::size_t>(order());
    c.elements.reserve(n);
    c.parent.reserve(n);
    c.generator.reserve(n);
    c.index.reserve(n);
    c.elements.push_back(identity());
    c.parent.push_back(0);
    c.generator.push_back(0);
    c.index.emplace(c.elements.front(), 0);
    for (std::size_t i = 0; i < c.elements.size(); ++i) {
      for (std::size_t g = 0; g < generators_.size(); ++g) {
        Perm y = c.elements[i] * generators_[g];
        auto [it, inserted] = c.index.emplace(y, static_cast<std::uint32_t>(c.elements.size()));
        if (!inserted) continue;
        c.elements.push_back(std::move(y));
        c.parent.push_back(static_cast<std::uint32_t>(i));
        c.generator.push_back(static_cast<std::uint32_t>(g));
      }
    }
    if (c.elements.size() != n) throw InternalError("element enumeration disagrees with chain order");
  });
  return *cache_;
}

const std::vector<Perm>& Group::elements() const { return cache().elements; }

std::optional<std::uint32_t> Group::index_of(const Perm& x) const {
  const auto& c = cache();
  auto it = c.index.find(x);
  if (it == c.index.end()) return std::nullopt;
  return it->second;
}

std::uint32_t Group::parent(std::uint32_t i) const { return cache().parent.at(i); }
std::uint32_t Group::generator_of(std::uint32_t i) const { return cache().generator.at(i); }

bool operator==(const Group& a, const Group& b) {
  return a.degree_ == b.degree_ && a.order() == b.order() && a.is_subgroup_of(b);
}

Group group_from_generators(std::size_t degree, std::vector<Perm> gens) {
  return Group(degree, std::move(gens));
}

bool is_member(const Group& g, const Perm& x) { return g.contains(x); }

Group join(const Group& a, const Group& b) {
  if (a.degree() != b.degree()) throw ValidationError("join of groups of different degree");
  if (b.is_subgroup_of(a)) return a;
  if (a.is_subgroup_of(b)) return b;
  std::vector<Perm> gens(a.generators().begin(), a.generators().end());
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Group(a.degree(), std::move(gens));
}

Group subgroup_from_elements(std::size_t degree, std::span<const Perm> elements) {
  StabilizerChain chain(degree);
  std::vector<Perm> gens;
  for (const auto& x : elements) {
    if (chain.add_generator(x)) gens.push_back(x);
  }
  return Group(degree, std::move(gens));
}

Group normal_closure(std::span<const Perm> s, const Group& ambient) {
  for (const auto& x : s) {
    if (!ambient.contains(x)) throw ContainmentError("normal_closure: element outside the ambient group");
  }
  StabilizerChain chain(ambient.degree());
  std::vector<Perm> gens;
  std::deque<Perm> queue;
  for (const auto& x : s) {
    if (chain.add_generator(x)) {
      gens.push_back(x);
      queue.push_back(x);
    }
  }
  while (!queue.empty()) {
    Perm n = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : ambient.generators()) {
      Perm c = conjugate(n, g);
      if (chain.add_generator(c)) {
        gens.push_back(c);
        queue.push_back(std::move(c));
      }
    }
  }
  return Group(ambient.degree(), std::move(gens));
}

Group commutator_subgroup(const Group& h, const Group& k, const Group& ambient) {
  if (!h.is_subgroup_of(ambient) || !k.is_subgroup_of(ambient))
    throw ContainmentError("commutator_subgroup: argument not contained in the ambient group");
  std::vector<Perm> comms;
  for (const auto& x : h.generators())
    for (const auto& y : k.generators()) {
      Perm c = commutator(x, y);
      if (!c.is_identity()) comms.push_back(std::move(c));
    }
  if (comms.empty()) return Group(ambient.degree());
  return normal_closure(comms, join(h, k));
}

Group iterated_commutator(const Group& x, const Group& h, int times) {
  Group current = x;
  const Group ambient = join(x, h);
  for (int i = 0; i < times && !current.is_trivial(); ++i)
    current = commutator_subgroup(current, h, ambient);
  return current;
}

Group intersection(const Group& h, const Group& k) {
  if (h.degree() != k.degree()) throw ValidationError("intersection of groups of different degree");
  const Group& small = h.order() <= k.order() ? h : k;
  const Group& large = h.order() <= k.order() ? k : h;
  if (small.is_subgroup_of(large)) return small;
  if (small.order() > enumeration_cap())
    throw CapacityError("intersection: both groups exceed the enumeration cap");
  std::vector<Perm> kept;
  for (const auto& x : small.chain().enumerate())
    if (large.contains(x)) kept.push_back(x);
  return subgroup_from_elements(h.degree(), kept);
}

Group conjugate_subgroup(const Group& h, const Perm& g) {
  std::vector<Perm> gens;
  gens.reserve(h.generators().size());
  for (const auto& x : h.generators()) gens.push_back(conjugate(x, g));
  return Group(h.degree(), std::move(gens));
}

}  // namespace cplab

namespace cplab {

std::uint64_t prime_part(std::uint64_t n, std::uint64_t r) {
  std::uint64_t part = 1;
  while (n % r == 0) {
    n /= r;
    part *= r;
  }
  return part;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Group sylow_subgroup(const Group& g, std::uint64_t r) {
  const std::uint64_t target = prime_part(g.order(), r);
  Group p(g.degree());
  if (target == 1) return p;
  const auto& els = g.elements();
  auto is_r_element = [r](const Perm& x) {
    auto o = x.order();
    while (o % r == 0) o /= r;
    return o == 1;
  };
  std::vector<const Perm*> r_elements;
  for (const auto& x : els)
    if (!x.is_identity() && is_r_element(x)) r_elements.push_back(&x);
  while (p.order() < target) {
    bool grown = false;
    for (const Perm* x : r_elements) {
      if (p.contains(*x)) continue;
      bool normalizes = true;
      for (const auto& y : p.generators())
        if (!p.contains(conjugate(y, *x))) {
          normalizes = false;
          break;
        }
      if (!normalizes) continue;
      std::vector<Perm> gens(p.generators().begin(), p.generators().end());
      gens.push_back(*x);
      p = Group(g.degree(), std::move(gens));
      grown = true;
      break;
    }
    if (!grown) throw InternalError("sylow_subgroup: no normalizing r-element found");
  }
  return p;
}

}  // namespace cplab
