#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fmfg/config.hpp"

namespace fmfg {

/// Outcome of one CLI-level experiment. `summary` is what gets written to
/// summary.json (and printed); pass mirrors the emitted pass flags.
struct RunResult {
  bool pass = false;
  nlohmann::json summary;
};

RunResult run_solve(const LoadedProblem& loaded, const std::string& out_dir, std::uint64_t seed);
RunResult run_sweep(const LoadedProblem& loaded, std::vector<double> sigmas,
                    const std::string& out_dir, std::uint64_t seed);
RunResult run_picard(const LoadedProblem& loaded, std::vector<double> horizons,
                     const std::string& out_dir, std::uint64_t seed);
RunResult run_uniqueness(const LoadedProblem& loaded, int n_inits, const std::string& out_dir,
                         std::uint64_t seed);
/// suite: spaces | hamiltonian | coupling | semigroup
RunResult run_verify(const LoadedProblem& loaded, const std::string& suite,
                     const std::string& out_dir, std::uint64_t seed);
RunResult run_semigroup_decay(const LoadedProblem& loaded, double nu, double gamma, double p,
                              const std::string& out_dir, std::uint64_t seed);

}  // namespace fmfg
