#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "holonomic_cli/cli.hpp"

namespace holonomic::cli {

struct Artifact {
  nlohmann::json result;
  std::string csv;
  // Set when an invariant failed; the run exits with kExitViolation.
  std::optional<nlohmann::json> counterexample;
  std::string key_result;
};

Artifact spaceform_table(const RunConfig& config);
Artifact holrad(const RunConfig& config);
Artifact counterexample_sweep(const RunConfig& config);
Artifact fiber_distance_report(const RunConfig& config);
Artifact property_suite(const RunConfig& config);
Artifact transport_check(const RunConfig& config);

}  // namespace holonomic::cli
