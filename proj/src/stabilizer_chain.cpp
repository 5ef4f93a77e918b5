#include "coprime_lab/stabilizer_chain.hpp"

#include "coprime_lab/errors.hpp"

namespace cplab {

std::vector<Perm::Point> StabilizerChain::base() const {
  std::vector<Perm::Point> out;
  out.reserve(levels_.size());
  for (const auto& level : levels_) out.push_back(level.base_point);
  return out;
}

std::uint64_t StabilizerChain::order() const {
  std::uint64_t n = 1;
  for (const auto& level : levels_) n *= level.orbit.size();
  return n;
}

std::pair<Perm, std::size_t> StabilizerChain::strip(Perm g, std::size_t from) const {
  for (std::size_t l = from; l < levels_.size(); ++l) {
    const auto& level = levels_[l];
    const auto beta = g[level.base_point];
    const auto pos = level.position[beta];
    if (pos < 0) return {std::move(g), l};
    g *= level.transversal_inv[static_cast<std::size_t>(pos)];
  }
  return {std::move(g), levels_.size()};
}

bool StabilizerChain::contains(const Perm& g) const {
  if (g.degree() != degree_) throw ValidationError("degree mismatch in membership test");
  auto [residue, depth] = strip(g, 0);
  return depth == levels_.size() && residue.is_identity();
}

void StabilizerChain::append_level(Perm::Point base_point) {
  Level level;
  level.base_point = base_point;
  level.position.assign(degree_, -1);
  level.position[base_point] = 0;
  level.orbit.push_back(base_point);
  level.transversal.emplace_back(degree_);
  level.transversal_inv.emplace_back(degree_);
  levels_.push_back(std::move(level));
  tested_.emplace_back();
}

void StabilizerChain::extend_orbit(std::size_t l) {
  auto& level = levels_[l];
  for (std::size_t i = 0; i < level.orbit.size(); ++i) {
    const auto beta = level.orbit[i];
    for (const auto& gen : level.generators) {
      const auto image = gen[beta];
      if (level.position[image] >= 0) continue;
      level.position[image] = static_cast<std::int32_t>(level.orbit.size());
      level.orbit.push_back(image);
      Perm u = level.transversal[i] * gen;
      level.transversal_inv.push_back(u.inverse());
      level.transversal.push_back(std::move(u));
    }
  }
}

void StabilizerChain::complete_from(std::size_t start) {
  std::size_t i = start + 1;
  while (i > 0) {
    const std::size_t l = i - 1;
    bool restarted = false;
    for (std::size_t oi = 0; oi < levels_[l].orbit.size() && !restarted; ++oi) {
      for (std::size_t gi = 0; gi < levels_[l].generators.size(); ++gi) {
        if (!tested_[l].emplace(oi, gi).second) continue;
        const auto& level = levels_[l];
        const Perm& x = level.generators[gi];
        const auto image = x[level.orbit[oi]];
        Perm schreier = level.transversal[oi] * x *
                        level.transversal_inv[static_cast<std::size_t>(level.position[image])];
        auto [h, depth] = strip(std::move(schreier), l + 1);
        if (depth == levels_.size() && h.is_identity()) continue;
        if (depth == levels_.size()) append_level(h.first_moved_point());
        for (std::size_t m = l + 1; m <= depth; ++m) {
          levels_[m].generators.push_back(h);
          extend_orbit(m);
        }
        i = depth + 1;
        restarted = true;
        break;
      }
    }
    if (!restarted) --i;
  }
}

bool StabilizerChain::add_generator(const Perm& g) {
  if (g.degree() != degree_) throw ValidationError("generator degree mismatch");
  auto [h, depth] = strip(g, 0);
  if (depth == levels_.size() && h.is_identity()) return false;
  if (depth == levels_.size()) append_level(h.first_moved_point());
  for (std::size_t m = 0; m <= depth; ++m) {
    levels_[m].generators.push_back(h);
    extend_orbit(m);
  }
  complete_from(depth);
  return true;
}

Perm StabilizerChain::canonical_coset_rep(const Perm& x) const {
  Perm g = x;
  for (const auto& level : levels_) {
    std::size_t best = 0;
    auto best_image = g[level.orbit[0]];
    for (std::size_t i = 1; i < level.orbit.size(); ++i) {
      const auto image = g[level.orbit[i]];
      if (image < best_image) {
        best_image = image;
        best = i;
      }
    }
    g = level.transversal[best] * g;
  }
  return g;
}

std::vector<Perm> StabilizerChain::enumerate() const {
  std::vector<Perm> out{Perm(degree_)};
  // g = h * u with h in the next stabilizer, so build from the deepest level up.
  for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) {
    std::vector<Perm> next;
    next.reserve(out.size() * it->orbit.size());
    for (const auto& h : out)
      for (const auto& u : it->transversal) next.push_back(h * u);
    out = std::move(next);
  }
  return out;
}

}  // namespace cplab
