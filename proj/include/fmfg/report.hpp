#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include <json.hpp>

namespace fmfg {

/// Outcome of one sampled inequality or rate verification. The constants the
/// estimates leave unquantified are reported empirically, never asserted
/// against a theoretical value.
struct InequalityReport {
  std::string name;
  int samples = 0;
  double worst_ratio = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> fitted_exponent;
  bool pass = false;
  std::uint64_t seed = 0;
  nlohmann::json config = nlohmann::json::object();
  nlohmann::json details = nlohmann::json::object();

  nlohmann::json to_json() const {
    nlohmann::json j{{"name", name},
                     {"samples", samples},
                     {"worst_ratio", worst_ratio},
                     {"pass", pass},
                     {"seed", seed},
                     {"config", config}};
    if (fitted_exponent) j["fitted_exponent"] = *fitted_exponent;
    if (!details.empty()) j["details"] = details;
    return j;
  }
};

}  // namespace fmfg
