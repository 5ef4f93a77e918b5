#pragma once

#include <filesystem>

#include <json.hpp>

#include "coprime_lab/coprime_action.hpp"

namespace cplab {

inline constexpr int kInstanceSchema = 1;

/// Basis-vector images only; other exponent vectors are implied.
nlohmann::json instance_to_json(const ActionSetup& setup);
/// Throws ValidationError naming the offending location.  Exponent vectors
/// that are not basis vectors are cross-checked against the derived action;
/// omitted basis vectors and generator indices act trivially.
ActionSetup instance_from_json(const nlohmann::json& doc);

void save_instance(const std::filesystem::path& path, const ActionSetup& setup);
ActionSetup load_instance(const std::filesystem::path& path);

}  // namespace cplab
