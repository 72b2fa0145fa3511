#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ulik/scenario.hpp"

namespace ulik {

inline constexpr int kScenarioFormatVersion = 1;

struct LoadOptions {
  bool lenient = false;  // ignore unknown fields instead of rejecting them
};

/// Parses a JSON scenario document. Throws kSchemaError (message carries the
/// field path, e.g. "cells[2].region.radius") for malformed documents and
/// kValidationError naming the cell for semantic violations.
NetworkScenario load_scenario(std::string_view json_text, const LoadOptions& options = {});
NetworkScenario load_scenario_file(const std::filesystem::path& path,
                                   const LoadOptions& options = {});

/// Serializes the declared regions (without exclusion disks). Numbers are
/// written with round-trip precision.
std::string save_scenario(const NetworkScenario& scenario);
void save_scenario_file(const NetworkScenario& scenario, const std::filesystem::path& path);

}  // namespace ulik
