#include "fmfg/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace fmfg {

void MFGProblem::validate() const {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("fractional order s must lie in (0,1)");
  if (!(sigma >= 0.0)) throw std::invalid_argument("viscosity sigma must be >= 0");
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon T must be positive");
  if (!(m0.grid() == grid) || !(uT.grid() == grid) || !(ham.c().grid() == grid) ||
      !(coupling.kernel().grid() == grid))
    throw std::invalid_argument("problem fields must share one grid");
  for (std::size_t i = 0; i < m0.size(); ++i)
    if (m0.values()[i] < 0.0)
      throw std::invalid_argument("(I): m0 negative at node " + std::to_string(i));
  if (std::abs(m0.mean() - 1.0) > 1e-10)
    throw std::invalid_argument("(I): integral of m0 must equal 1, got " +
                                std::to_string(m0.mean()));
}

void SolverConfig::validate() const {
  if (nt < 8) throw std::invalid_argument("nt must be >= 8");
  if (!(damping > 0.0 && damping <= 1.0)) throw std::invalid_argument("damping must lie in (0,1]");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
}

TrajectoryMetric metric_from_string(const std::string& name) {
  if (name == "l2_traj") return TrajectoryMetric::l2_traj;
  if (name == "d1_sup") return TrajectoryMetric::d1_sup;
  throw std::invalid_argument("unknown trajectory metric '" + name + "'");
}

Integrator integrator_from_string(const std::string& name) {
  if (name == "imex") return Integrator::imex;
  if (name == "etd1") return Integrator::etd1;
  throw std::invalid_argument("unknown integrator '" + name + "'");
}

}  // namespace fmfg
