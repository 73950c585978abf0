#pragma once

#include <string>

#include <json.hpp>

#include "fmfg/problem.hpp"

namespace fmfg {

/// Problem + solver configuration parsed from a structured text file (see
/// README for the key schema). Parsing and validation errors carry
/// "path:line:" prefixes and name the violated assumption.
struct LoadedProblem {
  MFGProblem problem;
  SolverConfig solver;
  nlohmann::json echo;      // parsed keys, for embedding into artifacts
  std::string config_hash;  // fingerprint of the raw config bytes
  std::string path;
};

LoadedProblem load_config(const std::string& path);

/// Parse from an in-memory string (used by tests); `name` appears in errors.
LoadedProblem parse_config(const std::string& text, const std::string& name = "<config>");

inline constexpr const char* kCodeVersion = "0.1.0";

}  // namespace fmfg
