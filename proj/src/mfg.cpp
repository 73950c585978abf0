#include "fmfg/mfg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fmfg/norms.hpp"
#include "fmfg/spectral_ops.hpp"
#include "fmfg/util.hpp"
#include "fmfg/wasserstein.hpp"

namespace fmfg {

double trajectory_metric(const Trajectory& a, const Trajectory& b, TrajectoryMetric metric) {
  if (a.steps() != b.steps()) throw std::invalid_argument("trajectory length mismatch");
  double worst = 0.0;
  for (int i = 0; i <= a.steps(); ++i) {
    const double d = metric == TrajectoryMetric::l2_traj
                         ? lp_norm(a.fields[i] - b.fields[i], 2.0)
                         : wasserstein1(a.fields[i], b.fields[i]);
    worst = std::max(worst, d);
  }
  return worst;
}

Trajectory coupling_trajectory(const MFGProblem& problem, const Trajectory& m) {
  Trajectory v;
  v.t_start = m.t_start;
  v.t_end = m.t_end;
  v.fields.reserve(m.fields.size());
  for (const auto& f : m.fields) v.fields.push_back(problem.coupling.apply(f));
  return v;
}

DriftTrajectory mfg_drift(const MFGProblem& problem, const Trajectory& u) {
  DriftTrajectory drift;
  drift.t_start = u.t_start;
  drift.t_end = u.t_end;
  drift.fields.reserve(u.fields.size());
  for (const auto& f : u.fields) {
    VectorField b = problem.ham.grad_p(gradient(f));
    for (auto& comp : b.comps) comp *= -1.0;
    drift.fields.push_back(std::move(b));
  }
  return drift;
}

SolutionPair solve_mfg_fixed_point(const MFGProblem& problem, const SolverConfig& config,
                                   const SpectralField* init_density) {
  problem.validate();
  config.validate();

  const SpectralField& start = init_density ? *init_density : problem.m0;
  Trajectory m_cur = Trajectory::constant(start, 0.0, problem.horizon, config.nt);

  double delta = config.damping;
  double gap = std::numeric_limits<double>::infinity();
  double prev_gap = gap, prev_prev_gap = gap;
  bool converged = false;
  int iterations = 0;
  HJBDiagnostics hjb_diag{};
  FPDiagnostics fp_diag{};

  for (int iter = 1; iter <= config.max_iter; ++iter) {
    iterations = iter;
    const Trajectory v_field = coupling_trajectory(problem, m_cur);
    HJBResult hjb = solve_hjb_backward(problem, v_field, config);
    const DriftTrajectory drift = mfg_drift(problem, hjb.u);
    FPResult fp = solve_fp_forward(problem, drift, config);
    hjb_diag = hjb.diag;
    fp_diag = fp.diag;

    Trajectory m_next = m_cur;
    for (int i = 0; i <= config.nt; ++i) {
      m_next.fields[i] *= (1.0 - delta);
      m_next.fields[i] += delta * fp.m.fields[i];
    }
    gap = trajectory_metric(m_next, m_cur, config.metric);
    m_cur = std::move(m_next);

    if (gap > prev_gap && prev_gap > prev_prev_gap) delta = std::max(delta / 2.0, 1e-3);
    prev_prev_gap = prev_gap;
    prev_gap = gap;

    if (gap < config.tol) {
      converged = true;
      break;
    }
  }

  // Recompute u from the final density and report both PDE residuals.
  const Trajectory v_field = coupling_trajectory(problem, m_cur);
  HJBResult hjb = solve_hjb_backward(problem, v_field, config);

  SolutionPair pair;
  pair.u = std::move(hjb.u);
  pair.m = std::move(m_cur);
  pair.diag.hjb = hjb.diag;
  pair.diag.fp = fp_diag;
  pair.diag.outer_iterations = iterations;
  pair.diag.final_fixed_point_gap = gap;
  pair.diag.converged = converged;
  pair.diag.final_damping = delta;
  const auto [hjb_res, fp_res] = mfg_residual(problem, pair);
  pair.diag.hjb_residual = hjb_res;
  pair.diag.fp_residual = fp_res;
  return pair;
}

std::pair<double, double> mfg_residual(const MFGProblem& problem, const SolutionPair& pair) {
  const int nt = pair.u.steps();
  const double dt = pair.u.dt();
  const auto op = problem.op();

  double hjb_num = 0.0, hjb_den = 0.0, fp_num = 0.0, fp_den = 0.0;
  for (int i = 1; i < nt; ++i) {
    const SpectralField dudt = (1.0 / (2.0 * dt)) * (pair.u.fields[i + 1] - pair.u.fields[i - 1]);
    const SpectralField lam_u = apply_generator(pair.u.fields[i], op);
    const VectorField du = gradient(pair.u.fields[i]);
    SpectralField h = problem.ham.value(du);
    h = dealias(h);
    const SpectralField f_m = problem.coupling.apply(pair.m.fields[i]);
    const SpectralField r_hjb = lam_u + h - f_m - dudt;
    hjb_num += lp_norm(r_hjb, 2.0) * lp_norm(r_hjb, 2.0) * dt;
    {
      const double scale =
          lp_norm(dudt, 2.0) + lp_norm(lam_u, 2.0) + lp_norm(h, 2.0) + lp_norm(f_m, 2.0);
      hjb_den += scale * scale * dt;
    }

    const SpectralField dmdt = (1.0 / (2.0 * dt)) * (pair.m.fields[i + 1] - pair.m.fields[i - 1]);
    const SpectralField lam_m = apply_generator(pair.m.fields[i], op);
    VectorField dp = problem.ham.grad_p(du);
    VectorField flux;
    for (int c = 0; c < problem.grid.dim; ++c)
      flux.comps.push_back(dealias(multiply(dp.comps[c], pair.m.fields[i])));
    const SpectralField div_flux = divergence(flux);
    const SpectralField r_fp = dmdt + lam_m - div_flux;
    fp_num += lp_norm(r_fp, 2.0) * lp_norm(r_fp, 2.0) * dt;
    {
      const double scale = lp_norm(dmdt, 2.0) + lp_norm(lam_m, 2.0) + lp_norm(div_flux, 2.0);
      fp_den += scale * scale * dt;
    }
  }
  return {std::sqrt(hjb_num) / (std::sqrt(hjb_den) + 1e-300),
          std::sqrt(fp_num) / (std::sqrt(fp_den) + 1e-300)};
}

namespace {

double weak_m_gap(const Trajectory& a, const Trajectory& b, double s_exp) {
  // L^2(0,T; H^s_2) surrogate.
  const double dt = a.dt();
  std::vector<double> sq(a.steps() + 1);
  for (int i = 0; i <= a.steps(); ++i) {
    const double nrm = bessel_norm(a.fields[i] - b.fields[i], s_exp, 2.0);
    sq[i] = nrm * nrm;
  }
  return std::sqrt(trapezoid(sq, dt));
}

}  // namespace

SweepReport vanishing_viscosity_sweep(const MFGProblem& problem, std::vector<double> sigmas,
                                      const SolverConfig& config) {
  if (sigmas.size() < 2 || sigmas.back() != 0.0)
    throw std::invalid_argument("viscosity ladder must descend and end at 0");
  for (std::size_t i = 1; i < sigmas.size(); ++i)
    if (!(sigmas[i] < sigmas[i - 1]))
      throw std::invalid_argument("viscosity ladder must be strictly descending");

  std::vector<SolutionPair> pairs;
  pairs.reserve(sigmas.size());
  for (double sigma : sigmas) {
    MFGProblem rung = problem;
    rung.sigma = sigma;
    pairs.push_back(solve_mfg_fixed_point(rung, config));
  }
  const SolutionPair& ref = pairs.back();

  SweepReport report;
  report.sigmas = sigmas;
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    const auto& p = pairs[r];
    double sup_u = 0.0;
    for (int i = 0; i <= config.nt; ++i)
      sup_u = std::max(sup_u, (p.u.fields[i] - ref.u.fields[i]).sup_norm());
    report.sup_errors_u.push_back(sup_u);

    std::vector<double> du_sq(config.nt + 1);
    for (int i = 0; i <= config.nt; ++i) {
      const VectorField da = gradient(p.u.fields[i]);
      const VectorField db = gradient(ref.u.fields[i]);
      double mean = 0.0;
      for (int c = 0; c < problem.grid.dim; ++c) {
        const double nrm = lp_norm(da.comps[c] - db.comps[c], 2.0);
        mean += nrm * nrm;
      }
      du_sq[i] = mean;
    }
    report.lp_errors_du.push_back(std::sqrt(trapezoid(du_sq, p.u.dt())));

    report.weak_gaps_m.push_back(
        problem.s <= 0.5 ? weak_m_gap(p.m, ref.m, problem.s)
                         : trajectory_metric(p.m, ref.m, TrajectoryMetric::l2_traj));
    report.semiconcavity.push_back(p.diag.hjb.semiconcavity_constant);
    report.lipschitz.push_back(p.diag.hjb.lipschitz_constant);
    report.holder_surrogate.push_back(
        parabolic_holder_surrogate(p.u, 0.5, 0.5 / (2.0 * problem.s)));
    report.comparison_slack.push_back(p.diag.hjb.sup_norm_bound_slack);
    report.comparison_rhs.push_back(p.diag.hjb.comparison_rhs);
    report.rung_converged.push_back(p.diag.converged);
  }

  // Strict decrease over the last three rungs with 5% slack; the final rung
  // is the reference itself (zero error), so the informative comparison is
  // between the two preceding rungs.
  const std::size_t k = sigmas.size();
  report.errors_decreasing = true;
  for (std::size_t i = k - 3; i + 1 < k; ++i) {
    if (!(report.sup_errors_u[i + 1] < report.sup_errors_u[i] * 1.05) ||
        !(report.lp_errors_du[i + 1] < report.lp_errors_du[i] * 1.05))
      report.errors_decreasing = false;
  }
  if (!(report.sup_errors_u[k - 3] > report.sup_errors_u[k - 1]) ||
      !(report.lp_errors_du[k - 3] > report.lp_errors_du[k - 1]))
    report.errors_decreasing = false;
  return report;
}

namespace {

double x_norm(const Trajectory& traj, double mu, double p) {
  double worst = 0.0;
  for (const auto& f : traj.fields) worst = std::max(worst, bessel_norm(f, mu, p));
  return worst;
}

struct PicardIterate {
  Trajectory v, m;
};

PicardIterate picard_apply(const MFGProblem& problem, const PicardIterate& prev, int nt,
                           bool apply_dealias) {
  const double T = problem.horizon;
  const double dt = T / nt;
  const auto op = problem.op();

  PicardIterate next;
  next.v.t_start = next.m.t_start = 0.0;
  next.v.t_end = next.m.t_end = T;
  next.v.fields.assign(nt + 1, SpectralField());
  next.m.fields.assign(nt + 1, SpectralField());
  next.v.fields[0] = problem.uT;
  next.m.fields[0] = problem.m0;

  for (int i = 0; i < nt; ++i) {
    // Phi^v[v,m](t_i) = F[m(T - t_i)] - H(., Dv(., t_i)).
    SpectralField h = problem.ham.value(gradient(prev.v.fields[i]));
    if (apply_dealias) h = dealias(h);
    const SpectralField phi_v = problem.coupling.apply(prev.m.fields[nt - i]) - h;
    next.v.fields[i + 1] = etd1_step(next.v.fields[i], phi_v, dt, op);

    // Phi^m[v,m](t_i) = div(D_pH(., Dv(., T - t_i)) m(t_i)).
    const VectorField dp = problem.ham.grad_p(gradient(prev.v.fields[nt - i]));
    VectorField flux;
    for (int c = 0; c < problem.grid.dim; ++c) {
      SpectralField comp = multiply(dp.comps[c], prev.m.fields[i]);
      if (apply_dealias) comp = dealias(comp);
      flux.comps.push_back(std::move(comp));
    }
    const SpectralField phi_m = divergence(flux);
    next.m.fields[i + 1] = etd1_step(next.m.fields[i], phi_m, dt, op);
  }
  return next;
}

}  // namespace

PicardReport picard_short_time(const MFGProblem& problem, const SolverConfig& config,
                               std::vector<double> horizons, double p) {
  if (!(problem.s > 0.5)) throw std::invalid_argument("short-time contraction requires s > 1/2");
  for (std::size_t i = 1; i < horizons.size(); ++i)
    if (!(horizons[i] > horizons[i - 1]))
      throw std::invalid_argument("horizons must be ascending");

  PicardReport report;
  report.horizons = horizons;
  report.expected_slope = (2.0 * problem.s - 1.0) / (2.0 * problem.s);

  const double dt_target = problem.horizon / config.nt;
  for (double T : horizons) {
    MFGProblem sub = problem;
    sub.horizon = T;
    const int nt = std::max(8, static_cast<int>(std::lround(T / dt_target)));

    // Start from the pure semigroup orbits and iterate the Duhamel map.
    PicardIterate cur;
    cur.v = semigroup_orbit(problem.uT, sub.op(), T, nt);
    cur.m = semigroup_orbit(problem.m0, sub.op(), T, nt);

    std::vector<double> gaps;
    const int max_sweeps = std::min(config.max_iter, 8);
    for (int j = 0; j < max_sweeps; ++j) {
      PicardIterate next = picard_apply(sub, cur, nt, config.dealias);
      double gap = 0.0;
      {
        Trajectory dv = next.v, dm = next.m;
        for (int i = 0; i <= nt; ++i) {
          dv.fields[i] -= cur.v.fields[i];
          dm.fields[i] -= cur.m.fields[i];
        }
        gap = x_norm(dv, 2.0 * problem.s, p) + x_norm(dm, 2.0 * problem.s - 1.0, p);
      }
      gaps.push_back(gap);
      cur = std::move(next);
      if (gap < config.tol) break;
    }

    // Empirical Lipschitz factor: median of successive gap ratios above the
    // resolution floor.
    std::vector<double> ratios;
    for (std::size_t j = 1; j < gaps.size(); ++j)
      if (gaps[j - 1] > 1e-13) ratios.push_back(gaps[j] / gaps[j - 1]);
    double factor = 0.0;
    if (!ratios.empty()) {
      std::sort(ratios.begin(), ratios.end());
      factor = ratios[ratios.size() / 2];
    }
    report.contraction_factors.push_back(factor);

    SolutionPair pair;
    pair.m = cur.m;
    pair.u.t_start = 0.0;
    pair.u.t_end = T;
    pair.u.fields.assign(nt + 1, SpectralField());
    for (int i = 0; i <= nt; ++i) pair.u.fields[i] = cur.v.fields[nt - i];
    pair.diag.converged = !gaps.empty() && gaps.back() < config.tol * 10.0;
    pair.diag.outer_iterations = static_cast<int>(gaps.size());
    pair.diag.final_fixed_point_gap = gaps.empty() ? 0.0 : gaps.back();
    report.solutions.push_back(std::move(pair));
  }

  bool fittable = true;
  for (double f : report.contraction_factors) fittable = fittable && f > 0.0;
  if (fittable)
    report.loglog_slope = fit_loglog_slope(report.horizons, report.contraction_factors);
  return report;
}

UniquenessReport uniqueness_experiment(const MFGProblem& problem,
                                       const std::vector<SpectralField>& inits,
                                       const SolverConfig& config) {
  if (inits.size() < 2) throw std::invalid_argument("need at least 2 initial guesses");
  std::vector<SolutionPair> pairs;
  pairs.reserve(inits.size());
  bool all_converged = true;
  for (const auto& init : inits) {
    pairs.push_back(solve_mfg_fixed_point(problem, config, &init));
    all_converged = all_converged && pairs.back().diag.converged;
  }

  double worst = 0.0;
  for (std::size_t a = 0; a < pairs.size(); ++a)
    for (std::size_t b = a + 1; b < pairs.size(); ++b) {
      double sup_u = 0.0;
      for (int i = 0; i <= config.nt; ++i)
        sup_u = std::max(sup_u, (pairs[a].u.fields[i] - pairs[b].u.fields[i]).sup_norm());
      const double m_gap = trajectory_metric(pairs[a].m, pairs[b].m, config.metric);
      worst = std::max(worst, sup_u + m_gap);
    }

  UniquenessReport report;
  report.max_pairwise_gap = worst;
  report.all_converged = all_converged;
  report.branches = static_cast<int>(inits.size());
  return report;
}

}  // namespace fmfg
