#include "coprime_lab/series.hpp"

#include "coprime_lab/errors.hpp"

namespace cplab {

const Group& SeriesResult::at(int index) const {
  const int offset = index - first_index;
  if (offset < 0) throw ValidationError("series index below the first term");
  return offset < static_cast<int>(terms.size()) ? terms[static_cast<std::size_t>(offset)] : terms.back();
}

namespace {

template <typename Step>
SeriesResult descend(const Group& g, int first_index, Step step) {
  SeriesResult result;
  result.first_index = first_index;
  result.terms.push_back(g);
  while (true) {
    if (result.terms.size() > kSeriesHardStop) throw InternalError("series did not stabilise within the hard stop");
    Group next = step(result.terms.back());
    if (next.order() == result.terms.back().order()) break;
    result.terms.push_back(std::move(next));
  }
  result.stabilized = true;
  if (result.terms.back().is_trivial()) result.class_or_length = static_cast<int>(result.terms.size()) - 1;
  return result;
}

}  // namespace

SeriesResult lower_central_series(const Group& g) {
  return descend(g, 1, [&](const Group& term) { return commutator_subgroup(term, g, g); });
}

SeriesResult derived_series(const Group& g) {
  return descend(g, 0, [&](const Group& term) { return commutator_subgroup(term, term, g); });
}

SeriesResult upper_central_series(const Group& g) {
  SeriesResult result;
  result.first_index = 0;
  result.terms.emplace_back(g.degree());
  const auto& els = g.elements();
  while (true) {
    if (result.terms.size() > kSeriesHardStop) throw InternalError("series did not stabilise within the hard stop");
    const Group& z = result.terms.back();
    std::vector<Perm> next_elements;
    for (const auto& x : els) {
      bool central = true;
      for (const auto& y : g.generators())
        if (!z.contains(commutator(x, y))) {
          central = false;
          break;
        }
      if (central) next_elements.push_back(x);
    }
    if (next_elements.size() == z.order()) break;
    result.terms.push_back(subgroup_from_elements(g.degree(), next_elements));
  }
  result.stabilized = true;
  if (result.terms.back().order() == g.order()) result.class_or_length = static_cast<int>(result.terms.size()) - 1;
  return result;
}

std::optional<int> nilpotency_class(const Group& g) { return lower_central_series(g).class_or_length; }

bool is_nilpotent(const Group& g) { return nilpotency_class(g).has_value(); }

Group center(const Group& g) {
  std::vector<Perm> central;
  for (const auto& x : g.elements()) {
    bool ok = true;
    for (const auto& y : g.generators())
      if (x * y != y * x) {
        ok = false;
        break;
      }
    if (ok) central.push_back(x);
  }
  return subgroup_from_elements(g.degree(), central);
}

Group normal_core(const Group& h, const Group& g) {
  Group core = h;
  while (true) {
    Group next = core;
    for (const auto& x : g.generators()) next = intersection(next, conjugate_subgroup(core, x));
    if (next.order() == core.order()) return core;
    core = std::move(next);
  }
}

Group largest_normal_r_subgroup(const Group& g, std::uint64_t r) {
  return normal_core(sylow_subgroup(g, r), g);
}

Group fitting_subgroup(const Group& g) {
  Group f(g.degree());
  for (auto r : prime_divisors(g.order())) f = join(f, largest_normal_r_subgroup(g, r));
  return f;
}

}  // namespace cplab
