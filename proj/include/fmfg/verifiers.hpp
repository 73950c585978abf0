#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fmfg/report.hpp"
#include "fmfg/semigroup.hpp"

namespace fmfg {

/// Smooth composition map Psi(x, v) with bounded derivatives.
struct CompositionMap {
  std::string label;
  std::function<double(const std::array<double, 2>&, double)> value;
};

/// Library of composition maps used by the chain-rule verifier.
std::vector<CompositionMap> standard_composition_maps();

/// ||(-Delta)^s u||_p <= delta ||D^r u||_p + C(delta) ||u||_p with r = 1 for
/// s < 1/2 and r = 2 otherwise. Reports the minimal empirical C(delta) over
/// the ladder delta in {1, 0.5, 0.1}; pass iff every C(delta) is finite.
InequalityReport verify_interpolation_inequality(const PeriodicGrid& grid, double s_exp, double p,
                                                 std::uint64_t seed, int samples);

struct KatoPonceExponents {
  double p, p1, q1, p2, q2;
};

/// Worst ratio ||fg||_{mu,p} / (||f||_{p1} ||g||_{mu,q1} + ||f||_{mu,p2}
/// ||g||_{q2}) over random band-limited pairs.
InequalityReport verify_kato_ponce(const PeriodicGrid& grid, double mu,
                                   const KatoPonceExponents& exps, std::uint64_t seed, int samples,
                                   double ceiling = 10.0);

/// Worst ratio ||Psi(., u)||_{mu-eps, p} / (||u||_{mu,p} + 1).
InequalityReport verify_chain_rule(const PeriodicGrid& grid, double mu, double p,
                                   const CompositionMap& psi, std::uint64_t seed, int samples,
                                   double eps = 0.1, double ceiling = 100.0);

/// Discrete Holder-quotient check of the parabolic embedding: sup over time
/// pairs of ||u(t)-u(tau)||_{mu-2beta,p} / |t-tau|^{beta/s - 1/p}, required
/// finite and stable (ratio < 2) against the half-sampled trajectory.
InequalityReport verify_time_embedding(const Trajectory& traj, double mu, double p, double s_exp,
                                       double beta);

}  // namespace fmfg
