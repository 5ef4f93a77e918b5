#pragma once

#include <cstdint>

namespace cplab {

inline constexpr std::uint64_t kDefaultEnumerationCap = 200'000;

// Largest group order for which full element enumeration is allowed.
// Initialised from COPRIME_LAB_CAP when set, otherwise kDefaultEnumerationCap.
std::uint64_t enumeration_cap();
void set_enumeration_cap(std::uint64_t cap);

}  // namespace cplab
