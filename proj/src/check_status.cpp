#include "coprime_lab/check_status.hpp"

namespace cplab {

std::string_view to_string(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::NotApplicable: return "not-applicable";
    case CheckStatus::HypothesisNotMet: return "hypothesis-not-met";
    case CheckStatus::NotGenerating: return "not-generating";
  }
  return "unknown";
}

}  // namespace cplab
