#include "coprime_lab/abelian_section.hpp"

#include <algorithm>
#include <numeric>

#include "coprime_lab/config.hpp"
#include "coprime_lab/errors.hpp"

namespace cplab {

AbelianSection::AbelianSection(Group numerator, Group denominator)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
  if (!denominator_.is_subgroup_of(numerator_))
    throw PreconditionError("abelian_section: denominator is not a subgroup of numerator");
  if (!denominator_.is_normal_in(numerator_))
    throw PreconditionError("abelian_section: denominator is not normal in numerator");
  const auto gens = numerator_.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!denominator_.contains(commutator(gens[i], gens[j])))
        throw PreconditionError("abelian_section: quotient is not abelian");

  const std::uint64_t qorder = numerator_.order() / denominator_.order();
  if (qorder > enumeration_cap()) throw CapacityError("abelian_section: quotient exceeds the enumeration cap");

  // Enumerate cosets through canonical representatives.
  std::vector<Perm> reps{canonical(numerator_.identity())};
  coset_index_.emplace(reps.front(), 0);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (const auto& g : gens) {
      Perm y = canonical(reps[i] * g);
      if (coset_index_.emplace(y, static_cast<std::uint32_t>(reps.size())).second) reps.push_back(std::move(y));
    }
  }
  if (reps.size() != qorder) throw InternalError("abelian_section: coset count disagrees with index");

  auto mult = [&](std::uint32_t a, std::uint32_t b) {
    return coset_index_.at(canonical(reps[a] * reps[b]));
  };

  const auto n = static_cast<std::uint32_t>(reps.size());
  std::vector<std::uint32_t> element_order(n, 1);
  for (std::uint32_t a = 1; a < n; ++a) {
    std::uint32_t pw = a;
    std::uint32_t ord = 1;
    while (pw != 0) {
      pw = mult(pw, a);
      ++ord;
    }
    element_order[a] = ord;
  }
  std::vector<std::uint32_t> candidates(n);
  std::iota(candidates.begin(), candidates.end(), 0u);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](auto a, auto b) { return element_order[a] > element_order[b]; });

  // Greedy direct-sum decomposition: repeatedly take an element of maximal
  // order whose cyclic subgroup meets the current span trivially.
  std::vector<char> in_span(n, 0);
  std::vector<std::vector<int>> exps(n);
  std::vector<std::uint32_t> span{0};
  in_span[0] = 1;
  while (span.size() < n) {
    std::uint32_t chosen = 0;
    std::vector<std::uint32_t> powers;
    for (auto c : candidates) {
      if (in_span[c]) continue;
      powers.assign(1, 0);
      bool ok = true;
      std::uint32_t pw = c;
      for (std::uint32_t t = 1; t < element_order[c]; ++t) {
        if (in_span[pw]) {
          ok = false;
          break;
        }
        powers.push_back(pw);
        pw = mult(pw, c);
      }
      if (ok) {
        chosen = c;
        break;
      }
    }
    if (chosen == 0) throw InternalError("abelian_section: greedy decomposition found no complement");
    for (auto s : span) exps[s].push_back(0);
    const std::size_t old = span.size();
    for (std::size_t si = 0; si < old; ++si) {
      const auto s = span[si];
      for (std::uint32_t t = 1; t < powers.size(); ++t) {
        const auto e = mult(s, powers[t]);
        in_span[e] = 1;
        exps[e] = exps[s];
        exps[e].back() = static_cast<int>(t);
        span.push_back(e);
      }
    }
    basis_.push_back(reps[chosen]);
    orders_.push_back(element_order[chosen]);
  }
  coset_exponents_ = std::move(exps);
}

std::vector<int> AbelianSection::decompose(const Perm& x) const {
  if (!numerator_.contains(x)) throw ContainmentError("abelian_section: element outside the numerator");
  return coset_exponents_[coset_index_.at(canonical(x))];
}

Perm AbelianSection::recompose(std::span<const int> exps) const {
  if (exps.size() != basis_.size()) throw ValidationError("exponent vector has the wrong length");
  Perm out = numerator_.identity();
  for (std::size_t i = 0; i < exps.size(); ++i) out *= basis_[i].pow(exps[i]);
  return out;
}

std::uint64_t AbelianSection::encode(std::span<const int> exps) const {
  std::uint64_t index = 0;
  for (std::size_t i = exps.size(); i-- > 0;) {
    const auto o = static_cast<std::int64_t>(orders_[i]);
    index = index * orders_[i] + static_cast<std::uint64_t>(((exps[i] % o) + o) % o);
  }
  return index;
}

std::vector<int> AbelianSection::decode(std::uint64_t index) const {
  std::vector<int> exps(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    exps[i] = static_cast<int>(index % orders_[i]);
    index /= orders_[i];
  }
  return exps;
}

std::vector<int> AbelianSection::normalize(std::vector<int> exps) const {
  for (std::size_t i = 0; i < exps.size(); ++i) {
    const int o = static_cast<int>(orders_[i]);
    exps[i] = ((exps[i] % o) + o) % o;
  }
  return exps;
}

AbelianSection abelian_section(const Group& numerator, const Group& denominator) {
  return AbelianSection(numerator, denominator);
}

}  // namespace cplab
