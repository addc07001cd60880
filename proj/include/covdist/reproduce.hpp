#pragma once

// Re-runs every reference example and compares against the stored
// reference values.

#include <string>
#include <vector>

#include <json.hpp>

namespace covdist {

struct ReferenceCheck {
  std::string name;
  std::string description;
  bool passed = false;
  double tolerance = 0;
  nlohmann::json expected;
  nlohmann::json actual;
  double max_abs_diff = 0;
};

/// tol_scale multiplies every tolerance (0 turns every comparison exact).
std::vector<ReferenceCheck> run_reference_checks(double tol_scale = 1.0);

nlohmann::json to_json(const ReferenceCheck& check);

}  // namespace covdist
