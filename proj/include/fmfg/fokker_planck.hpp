#pragma once

#include "fmfg/problem.hpp"

namespace fmfg {

struct FPDiagnostics {
  double mass_error_max = 0.0;    // max over steps of |grid mean - 1|
  double min_density = 0.0;       // min over Q_T
  double energy_residual = 0.0;   // relative defect in the energy identity
  double weak_residual = 0.0;     // defect against the space-time test basis
  double sup_norm = 0.0;          // ||m||_{inf, Q_T}
  double khat = 0.0;              // max over Q_T of [div b]^-
  bool negativity_flag = false;   // min density below the configured floor
  bool sup_bound_ok = true;       // sup_norm <= ||m0||_inf e^{khat T} (1+tol)
};

struct FPResult {
  Trajectory m;
  FPDiagnostics diag;
};

/// Forward march of d f/dt + sigma(-Delta)f + (-Delta)^s f + div(b f) = 0
/// from `init` over [t_start, t_end]; the zero mode of the divergence
/// vanishes so mass is conserved exactly. Shared by the FP solver and the
/// HJB adjoint (they discretize the same equation).
Trajectory transport_diffuse_march(const SpectralField& init, const DriftTrajectory& drift,
                                   const EvolutionOperator& op, Integrator integrator,
                                   bool apply_dealias);

/// Fokker-Planck solve with given drift b (inside the MFG, b = -D_pH(x,Du)).
/// A negative density below the floor is flagged, not fatal; NaN is fatal.
FPResult solve_fp_forward(const MFGProblem& problem, const DriftTrajectory& drift,
                          const SolverConfig& config, double negativity_floor_rel = 1e-3);

/// Relative defect in the accumulated energy identity
/// 1/2 d/dt ||m||_2^2 + sigma ||Dm||_2^2 + ||(-Delta)^{s/2} m||_2^2
///   = -1/2 int div(b) m^2.
double energy_identity_residual(const Trajectory& m, const DriftTrajectory& drift,
                                const MFGProblem& problem);

/// Stability monitors: sup norm, dissipation, mass error, min density, and
/// the comparison constant khat = max over Q_T of [div b]^-.
FPDiagnostics stability_report(const Trajectory& m, const DriftTrajectory& drift,
                               const MFGProblem& problem, double tol = 1e-6);

/// Weak-formulation residual against a band-limited space-time test basis;
/// returns the max relative defect over the basis.
double weak_form_residual(const Trajectory& m, const DriftTrajectory& drift,
                          const MFGProblem& problem, int n_test = 32);

}  // namespace fmfg
