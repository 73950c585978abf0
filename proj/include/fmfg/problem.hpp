#pragma once

#include <limits>
#include <string>

#include "fmfg/coupling.hpp"
#include "fmfg/hamiltonian.hpp"
#include "fmfg/semigroup.hpp"

namespace fmfg {

/// Full problem datum for the coupled backward-forward system on [0,T].
struct MFGProblem {
  PeriodicGrid grid;
  double s = 0.75;       // fractional order, (0,1)
  double sigma = 0.0;    // viscosity, >= 0
  double horizon = 1.0;  // T > 0
  Hamiltonian ham;
  Coupling coupling;
  SpectralField m0;  // probability density: >= 0, grid mean 1
  SpectralField uT;

  EvolutionOperator op() const { return {s, sigma}; }
  /// Throws std::invalid_argument naming the violated assumption.
  void validate() const;
};

enum class TrajectoryMetric { l2_traj, d1_sup };

struct SolverConfig {
  int nt = 256;          // time steps, >= 8
  double damping = 0.5;  // (0, 1]
  double tol = 1e-6;
  int max_iter = 60;
  Integrator integrator = Integrator::imex;
  bool dealias = true;
  TrajectoryMetric metric = TrajectoryMetric::l2_traj;
  // A solved backward trajectory whose discrete residual exceeds this is an
  // error (infinite = disabled).
  double residual_ceiling = std::numeric_limits<double>::infinity();

  void validate() const;
};

TrajectoryMetric metric_from_string(const std::string& name);
Integrator integrator_from_string(const std::string& name);

}  // namespace fmfg
