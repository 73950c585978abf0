#pragma once

#include "fmfg/problem.hpp"

namespace fmfg {

struct HJBDiagnostics {
  double sup_norm_bound_slack = 0.0;   // comparison-bound margin, >= 0 expected
  double comparison_rhs = 0.0;         // ||uT|| + T(||V|| + ||H(.,0)||)
  double semiconcavity_constant = 0.0; // max over time of the second-difference monitor
  double lipschitz_constant = 0.0;     // max over time of ||Du(.,t)||_inf
  double residual_l2 = 0.0;            // centered-in-time discrete PDE residual
};

struct HJBResult {
  Trajectory u;
  HJBDiagnostics diag;
};

/// Backward solve of -du/dt + sigma(-Delta)u + (-Delta)^s u + H(x,Du) = V
/// with u(.,T) = uT, marching tau = T - t with IMEX (diffusion implicit,
/// dealiased Hamiltonian explicit). `coupling_field` holds V(.,t) on the
/// solver time grid.
HJBResult solve_hjb_backward(const MFGProblem& problem, const Trajectory& coupling_field,
                             const SolverConfig& config);

/// RHS - ||u||_inf for the comparison bound
/// ||u|| <= ||uT|| + T(||V|| + ||H(.,0)||); nonnegative up to tolerance.
double check_comparison_bound(const Trajectory& u, const MFGProblem& problem,
                              const Trajectory& coupling_field);

/// Forward solve of the dual linearized equation on [tau, T]:
/// d rho/dt + sigma(-Delta)rho + (-Delta)^s rho - div(D_pH(x,Du) rho) = 0.
/// Mass is conserved exactly; throws if rho dips below the negativity floor.
Trajectory solve_adjoint(const SpectralField& rho_tau, const Trajectory& u,
                         const MFGProblem& problem, int tau_index, const SolverConfig& config,
                         double negativity_floor_rel = 1e-3);

/// Relative defect in the duality identity
/// int u(tau) rho_tau = int u(T) rho(T) + int int V rho
///                      + int int (D_pH(x,Du).Du - H(x,Du)) rho.
double duality_residual(const Trajectory& u, const Trajectory& rho,
                        const Trajectory& coupling_field, const MFGProblem& problem,
                        int tau_index);

/// Sampled space/time Holder surrogate seminorm of a trajectory, used for the
/// sigma-uniformity monitors.
double parabolic_holder_surrogate(const Trajectory& u, double alpha, double beta);

}  // namespace fmfg
