#include "fmfg/hjb.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fmfg/norms.hpp"
#include "fmfg/spectral_ops.hpp"
#include "fmfg/util.hpp"

namespace fmfg {

namespace {

SpectralField hamiltonian_source(const MFGProblem& problem, const SpectralField& u,
                                 bool apply_dealias) {
  SpectralField h = problem.ham.value(gradient(u));
  if (apply_dealias) h = dealias(h);
  return h;
}

void check_finite(const SpectralField& f, int step, const char* what) {
  for (double v : f.values())
    if (!std::isfinite(v))
      throw std::runtime_error(std::string(what) + " produced a non-finite value at step " +
                               std::to_string(step));
}

/// Centered-in-time residual of the HJB equation in L^2(Q_T), relative to
/// the L^2(Q_T) size of the equation terms.
double hjb_residual_l2(const Trajectory& u, const MFGProblem& problem,
                       const Trajectory& coupling_field, bool apply_dealias) {
  const int nt = u.steps();
  const double dt = u.dt();
  const auto op = problem.op();
  double num = 0.0, den = 0.0;
  for (int i = 1; i < nt; ++i) {
    const SpectralField dudt =
        (1.0 / (2.0 * dt)) * (u.fields[i + 1] - u.fields[i - 1]);
    const SpectralField lam_u = apply_generator(u.fields[i], op);
    const SpectralField h = hamiltonian_source(problem, u.fields[i], apply_dealias);
    const SpectralField residual =
        lam_u + h - coupling_field.fields[i] - dudt;
    num += lp_norm(residual, 2.0) * lp_norm(residual, 2.0) * dt;
    const double scale = lp_norm(lam_u, 2.0) + lp_norm(h, 2.0) +
                         lp_norm(coupling_field.fields[i], 2.0) + lp_norm(dudt, 2.0);
    den += scale * scale * dt;
  }
  return std::sqrt(num) / (std::sqrt(den) + 1e-300);
}

}  // namespace

HJBResult solve_hjb_backward(const MFGProblem& problem, const Trajectory& coupling_field,
                             const SolverConfig& config) {
  config.validate();
  const int nt = coupling_field.steps();
  if (nt != config.nt)
    throw std::invalid_argument("coupling field must live on the solver time grid");
  const double dt = problem.horizon / nt;
  const auto op = problem.op();

  Trajectory u;
  u.t_start = 0.0;
  u.t_end = problem.horizon;
  u.fields.assign(nt + 1, SpectralField());
  u.fields[nt] = problem.uT;

  HJBDiagnostics diag;
  diag.semiconcavity_constant = semiconcavity_bound(problem.uT);
  diag.lipschitz_constant = gradient(problem.uT).sup_norm();

  // March tau = T - t forward: u^{i-1} from u^i with the source frozen at
  // level i.
  for (int i = nt; i >= 1; --i) {
    const SpectralField h = hamiltonian_source(problem, u.fields[i], config.dealias);
    const SpectralField source = coupling_field.fields[i] - h;
    u.fields[i - 1] = evolution_step(u.fields[i], source, dt, op, config.integrator);
    check_finite(u.fields[i - 1], i - 1, "hjb step");
    diag.semiconcavity_constant =
        std::max(diag.semiconcavity_constant, semiconcavity_bound(u.fields[i - 1]));
    diag.lipschitz_constant =
        std::max(diag.lipschitz_constant, gradient(u.fields[i - 1]).sup_norm());
  }

  diag.residual_l2 = hjb_residual_l2(u, problem, coupling_field, config.dealias);
  if (diag.residual_l2 > config.residual_ceiling)
    throw std::runtime_error("hjb residual " + std::to_string(diag.residual_l2) +
                             " exceeds the configured ceiling");
  diag.sup_norm_bound_slack = check_comparison_bound(u, problem, coupling_field);
  {
    double v_sup = 0.0;
    for (const auto& f : coupling_field.fields) v_sup = std::max(v_sup, f.sup_norm());
    diag.comparison_rhs = problem.uT.sup_norm() + problem.horizon * v_sup;
  }
  return {std::move(u), diag};
}

double check_comparison_bound(const Trajectory& u, const MFGProblem& problem,
                              const Trajectory& coupling_field) {
  double u_sup = 0.0, v_sup = 0.0;
  for (const auto& f : u.fields) u_sup = std::max(u_sup, f.sup_norm());
  for (const auto& f : coupling_field.fields) v_sup = std::max(v_sup, f.sup_norm());
  // ||H(., 0)||_inf = 0 for the implemented family.
  const double rhs = problem.uT.sup_norm() + problem.horizon * v_sup;
  return rhs - u_sup;
}

Trajectory solve_adjoint(const SpectralField& rho_tau, const Trajectory& u,
                         const MFGProblem& problem, int tau_index, const SolverConfig& config,
                         double negativity_floor_rel) {
  const int nt = u.steps();
  if (tau_index < 0 || tau_index >= nt)
    throw std::invalid_argument("tau_index out of range");
  const double dt = u.dt();
  const auto op = problem.op();

  Trajectory rho;
  rho.t_start = u.time(tau_index);
  rho.t_end = u.t_end;
  rho.fields.assign(nt - tau_index + 1, SpectralField());
  rho.fields[0] = rho_tau;

  const double floor = -negativity_floor_rel * std::max(1.0, rho_tau.sup_norm());
  for (int i = tau_index; i < nt; ++i) {
    // drift D_pH(x, Du(., t_i)) frozen over the step, divergence form.
    const VectorField drift = problem.ham.grad_p(gradient(u.fields[i]));
    const SpectralField& cur = rho.fields[i - tau_index];
    VectorField flux;
    for (int j = 0; j < problem.grid.dim; ++j) {
      SpectralField comp = multiply(drift.comps[j], cur);
      if (config.dealias) comp = dealias(comp);
      flux.comps.push_back(std::move(comp));
    }
    const SpectralField source = divergence(flux);
    rho.fields[i - tau_index + 1] = evolution_step(cur, source, dt, op, config.integrator);
    check_finite(rho.fields[i - tau_index + 1], i + 1, "adjoint step");
    if (rho.fields[i - tau_index + 1].min_value() < floor)
      throw std::runtime_error("adjoint density dipped below the negativity floor at step " +
                               std::to_string(i + 1));
  }
  return rho;
}

double duality_residual(const Trajectory& u, const Trajectory& rho,
                        const Trajectory& coupling_field, const MFGProblem& problem,
                        int tau_index) {
  const int nt = u.steps();
  const int len = rho.steps();
  if (tau_index + len != nt) throw std::invalid_argument("rho window does not reach T");
  const double dt = u.dt();

  const double lhs = inner_product(u.fields[tau_index], rho.fields[0]);
  const double terminal = inner_product(u.fields[nt], rho.fields[len]);

  std::vector<double> v_rho(len + 1), legendre_rho(len + 1);
  for (int j = 0; j <= len; ++j) {
    const int i = tau_index + j;
    v_rho[j] = inner_product(coupling_field.fields[i], rho.fields[j]);
    const VectorField du = gradient(u.fields[i]);
    const VectorField dp = problem.ham.grad_p(du);
    const SpectralField h = problem.ham.value(du);
    std::vector<double> integrand(u.fields[i].size());
    for (std::size_t x = 0; x < integrand.size(); ++x) {
      double dot = 0.0;
      for (int c = 0; c < problem.grid.dim; ++c)
        dot += dp.comps[c].values()[x] * du.comps[c].values()[x];
      integrand[x] = (dot - h.values()[x]) * rho.fields[j].values()[x];
    }
    double mean = 0.0;
    for (double v : integrand) mean += v;
    legendre_rho[j] = mean / static_cast<double>(integrand.size());
  }
  const double rhs = terminal + trapezoid(v_rho, dt) + trapezoid(legendre_rho, dt);
  return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1e-300);
}

double parabolic_holder_surrogate(const Trajectory& u, double alpha, double beta) {
  const int nt = u.steps();
  const int stride = std::max(1, nt / 16);
  double time_part = 0.0;
  for (int i = 0; i <= nt; i += stride)
    for (int j = i + stride; j <= nt; j += stride) {
      const double d = (u.fields[j] - u.fields[i]).sup_norm();
      time_part = std::max(time_part, d / std::pow(u.time(j) - u.time(i), beta));
    }
  double space_part = 0.0;
  for (int i = 0; i <= nt; i += stride)
    space_part = std::max(space_part, holder_seminorm(u.fields[i], alpha));
  return time_part + space_part;
}

}  // namespace fmfg
