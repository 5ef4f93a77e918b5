#pragma once

#include <string>
#include <string_view>

namespace cplab {

enum class CheckStatus { Pass, Fail, NotApplicable, HypothesisNotMet, NotGenerating };

std::string_view to_string(CheckStatus s) noexcept;

struct CheckResult {
  CheckStatus status = CheckStatus::Pass;
  std::string detail;

  static CheckResult pass() { return {}; }
  static CheckResult fail(std::string why) { return {CheckStatus::Fail, std::move(why)}; }
  static CheckResult not_applicable(std::string why) { return {CheckStatus::NotApplicable, std::move(why)}; }

  bool passed() const noexcept { return status == CheckStatus::Pass; }
  /// Anything but an outright failure.
  bool ok() const noexcept { return status != CheckStatus::Fail; }
};

}  // namespace cplab
