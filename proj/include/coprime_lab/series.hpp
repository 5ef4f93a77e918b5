#pragma once

#include <optional>
#include <vector>

#include "coprime_lab/group.hpp"

namespace cplab {

/// A descending (lower central, derived) or ascending (upper central) series.
/// `terms.front()` carries index `first_index`; the last term is the point
/// where the series stabilised and is repeated implicitly beyond it.
struct SeriesResult {
  std::vector<Group> terms;
  int first_index = 0;
  bool stabilized = false;
  /// Nilpotency class or derived length, when the series reaches its end point.
  std::optional<int> class_or_length;

  const Group& at(int index) const;
};

inline constexpr int kSeriesHardStop = 64;

/// gamma_1 = G, gamma_{i+1} = [gamma_i, G].  first_index == 1.
SeriesResult lower_central_series(const Group& g);
/// G^(0) = G, G^(i+1) = [G^(i), G^(i)].  first_index == 0.
SeriesResult derived_series(const Group& g);
/// Z_0 = 1, Z_{i+1}/Z_i = Z(G/Z_i).  first_index == 0.  Needs enumeration.
SeriesResult upper_central_series(const Group& g);

std::optional<int> nilpotency_class(const Group& g);
bool is_nilpotent(const Group& g);

Group center(const Group& g);
/// Largest normal subgroup of g contained in h.
Group normal_core(const Group& h, const Group& g);
/// O_r(g), the largest normal r-subgroup.
Group largest_normal_r_subgroup(const Group& g, std::uint64_t r);
Group fitting_subgroup(const Group& g);

}  // namespace cplab
