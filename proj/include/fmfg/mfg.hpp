#pragma once

#include <optional>
#include <vector>

#include "fmfg/fokker_planck.hpp"
#include "fmfg/hjb.hpp"

namespace fmfg {

struct MFGDiagnostics {
  HJBDiagnostics hjb;
  FPDiagnostics fp;
  int outer_iterations = 0;
  double final_fixed_point_gap = 0.0;
  bool converged = false;
  double hjb_residual = 0.0;
  double fp_residual = 0.0;
  double final_damping = 0.0;
};

struct SolutionPair {
  Trajectory u;
  Trajectory m;
  MFGDiagnostics diag;
};

/// Distance between two m-trajectories in the configured outer metric.
double trajectory_metric(const Trajectory& a, const Trajectory& b, TrajectoryMetric metric);

/// Damped Picard iteration on the map mu -> (HJB with F[mu]) -> (FP with
/// drift -D_pH(x,Du)): m_{j+1} = (1-delta) m_j + delta T(m_j), starting from
/// the constant-in-time extension of `init_density` (default m0). Damping is
/// halved when the gap grows twice in a row. Non-convergence at max_iter is
/// reported, not an error.
SolutionPair solve_mfg_fixed_point(const MFGProblem& problem, const SolverConfig& config,
                                   const SpectralField* init_density = nullptr);

/// Coupling trajectory t -> F[m(t)] and drift trajectory t -> -D_pH(x,Du(t)).
Trajectory coupling_trajectory(const MFGProblem& problem, const Trajectory& m);
DriftTrajectory mfg_drift(const MFGProblem& problem, const Trajectory& u);

/// Centered-in-time relative residuals of (HJB, FP) in L^2(Q_T).
std::pair<double, double> mfg_residual(const MFGProblem& problem, const SolutionPair& pair);

struct SweepReport {
  std::vector<double> sigmas;
  std::vector<double> sup_errors_u;      // ||u_sigma - u_ref||_inf
  std::vector<double> lp_errors_du;      // ||Du_sigma - Du_ref||_{L^2(Q_T)}
  std::vector<double> weak_gaps_m;       // metric(m_sigma, m_ref)
  std::vector<double> semiconcavity;     // per-rung monitor
  std::vector<double> lipschitz;         // per-rung ||Du||_inf
  std::vector<double> holder_surrogate;  // per-rung space-time Holder monitor
  std::vector<double> comparison_slack;  // per-rung comparison-bound margin
  std::vector<double> comparison_rhs;    // per-rung comparison-bound RHS
  std::vector<bool> rung_converged;
  bool errors_decreasing = false;  // last three rungs, 5% slack
};

/// Solves the MFG along a descending viscosity ladder ending at 0; the sigma
/// = 0 solution is the reference. For s <= 1/2 the m gaps are measured in the
/// L^2(0,T;H^s_2) surrogate metric instead of sup-in-time L^2.
SweepReport vanishing_viscosity_sweep(const MFGProblem& problem, std::vector<double> sigmas,
                                      const SolverConfig& config);

struct PicardReport {
  std::vector<double> horizons;
  std::vector<double> contraction_factors;  // empirical Lipschitz factor L(T)
  std::vector<SolutionPair> solutions;      // converged pair at each horizon
  double loglog_slope = 0.0;                // fit of log L against log T
  double expected_slope = 0.0;              // (2s-1)/2s
};

/// Undamped Picard iteration on the forward-forward Duhamel system for
/// v(t) = u(T-t) and m, with exact exponential (ETD) stepping; requires
/// s > 1/2. Measures L(T) on an ascending ladder of horizons in the
/// C([0,T]; H^{2s}_p) x C([0,T]; H^{2s-1}_p) surrogate norms.
PicardReport picard_short_time(const MFGProblem& problem, const SolverConfig& config,
                               std::vector<double> horizons, double p = 2.0);

struct UniquenessReport {
  double max_pairwise_gap = 0.0;  // sup-u gap + m metric gap, worst pair
  bool all_converged = false;
  int branches = 0;
};

/// Fixed-point solves from several initial guesses; on the monotone
/// benchmark the converged pairs must essentially coincide.
UniquenessReport uniqueness_experiment(const MFGProblem& problem,
                                       const std::vector<SpectralField>& inits,
                                       const SolverConfig& config);

}  // namespace fmfg
