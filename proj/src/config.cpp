#include "coprime_lab/config.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace cplab {
namespace {

std::uint64_t initial_cap() {
  if (const char* env = std::getenv("COPRIME_LAB_CAP")) {
    try {
      auto value = std::stoull(env);
      if (value > 0) return value;
    } catch (...) {
    }
  }
  return kDefaultEnumerationCap;
}

std::atomic<std::uint64_t>& cap_storage() {
  static std::atomic<std::uint64_t> cap{initial_cap()};
  return cap;
}

}  // namespace

std::uint64_t enumeration_cap() { return cap_storage().load(std::memory_order_relaxed); }

void set_enumeration_cap(std::uint64_t cap) { cap_storage().store(cap, std::memory_order_relaxed); }

}  // namespace cplab
