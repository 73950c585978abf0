#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fmfg/hjb.hpp"
#include "fmfg/norms.hpp"
#include "fmfg/random_fields.hpp"
#include "fmfg/spectral_ops.hpp"
#include "test_helpers.hpp"

using namespace fmfg;
using namespace fmfg::test;

namespace {

MFGProblem linear_problem(const PeriodicGrid& grid, double s, double T,
                          const SpectralField& uT) {
  // c = 0 switches the Hamiltonian off; kernel = 0 kills the coupling.
  return MFGProblem{grid,
                    s,
                    0.0,
                    T,
                    Hamiltonian(1.5, SpectralField::zeros(grid)),
                    Coupling(SpectralField::zeros(grid), CouplingMode::generic),
                    SpectralField::constant(grid, 1.0),
                    uT};
}

MFGProblem benchmark_problem(const PeriodicGrid& grid, double s, double T) {
  return MFGProblem{grid,
                    s,
                    0.0,
                    T,
                    Hamiltonian(1.5, SpectralField::constant(grid, 1.0)),
                    Coupling::gaussian(grid, 4.0, CouplingMode::monotone),
                    SpectralField::sample(grid,
                                          [](const std::array<double, 2>& x) {
                                            return 1.0 + 0.4 * std::cos(kTwoPi * x[0]);
                                          }),
                    SpectralField::sample(grid, [](const std::array<double, 2>& x) {
                      return 0.2 * std::cos(kTwoPi * x[0]);
                    })};
}

Trajectory zero_coupling(const PeriodicGrid& grid, double T, int nt) {
  return Trajectory::constant(SpectralField::zeros(grid), 0.0, T, nt);
}

}  // namespace

TEST_CASE("hjb backward solve: linear and constant cases") {
  const PeriodicGrid grid = make_grid(1, 64);
  const double T = 0.25;

  SUBCASE("H = 0, V = 0: u(., t) is the backward heat flow, exact with ETD") {
    std::mt19937_64 rng(3);
    const SpectralField uT = random_band_limited(grid, rng);
    const MFGProblem problem = linear_problem(grid, 0.75, T, uT);
    SolverConfig config;
    config.nt = 64;
    config.integrator = Integrator::etd1;
    const HJBResult result = solve_hjb_backward(problem, zero_coupling(grid, T, config.nt), config);
    for (int i = 0; i <= config.nt; ++i) {
      const SpectralField expected = heat_step(uT, T - result.u.time(i), problem.op());
      CHECK(max_abs_diff(result.u.fields[i], expected) < 1e-12);
    }
    CHECK(result.diag.sup_norm_bound_slack >= -1e-6 * uT.sup_norm());
  }

  SUBCASE("constant terminal datum is an exact fixed solution") {
    const MFGProblem problem =
        linear_problem(grid, 0.5, T, SpectralField::constant(grid, 2.0));
    // A positive-c Hamiltonian still vanishes on constants: H(x, 0) = 0.
    MFGProblem with_h = problem;
    with_h.ham = Hamiltonian(1.5, SpectralField::constant(grid, 1.0));
    SolverConfig config;
    config.nt = 32;
    const HJBResult result =
        solve_hjb_backward(with_h, zero_coupling(grid, T, config.nt), config);
    for (const auto& f : result.u.fields)
      CHECK(max_abs_diff(f, SpectralField::constant(grid, 2.0)) < 1e-13);
    // Slack equals zero here: RHS = ||uT||, ||u|| = ||uT||.
    CHECK(result.diag.sup_norm_bound_slack == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("hjb manufactured solution converges at first order in time") {
  const PeriodicGrid grid = make_grid(1, 64);
  const double T = 0.25;
  const double s = 0.75;
  const MFGProblem problem = benchmark_problem(grid, s, T);

  auto manufactured = [&](double t) {
    return SpectralField::sample(grid, [&](const std::array<double, 2>& x) {
      return std::exp(-t) * std::cos(kTwoPi * x[0]);
    });
  };
  auto solve_error = [&](int nt) {
    // V := -du*/dt + (-Delta)^s u* + H(x, Du*), assembled spectrally.
    Trajectory v_field;
    v_field.t_start = 0.0;
    v_field.t_end = T;
    const double dt = T / nt;
    for (int i = 0; i <= nt; ++i) {
      const double t = i * dt;
      const SpectralField u_star = manufactured(t);
      const SpectralField dudt = -1.0 * u_star;
      const SpectralField frac = fractional_laplacian(u_star, s);
      const SpectralField h = problem.ham.value(gradient(u_star));
      v_field.fields.push_back(-1.0 * dudt + frac + h);
    }
    MFGProblem sub = problem;
    sub.uT = manufactured(T);
    SolverConfig config;
    config.nt = nt;
    const HJBResult result = solve_hjb_backward(sub, v_field, config);
    double err_sq = 0.0;
    for (int i = 0; i <= nt; ++i) {
      const double e = lp_norm(result.u.fields[i] - manufactured(i * dt), 2.0);
      err_sq += e * e * dt;
    }
    return std::sqrt(err_sq);
  };

  const double coarse = solve_error(100);
  const double fine = solve_error(200);
  const double order = std::log2(coarse / fine);
  CHECK(order > 0.9);
  CHECK(order < 1.6);
}

TEST_CASE("comparison bound holds on solved benchmarks") {
  const PeriodicGrid grid = make_grid(1, 64);
  const MFGProblem problem = benchmark_problem(grid, 0.75, 0.3);
  SolverConfig config;
  config.nt = 300;
  std::mt19937_64 rng(5);
  Trajectory v_field;
  v_field.t_start = 0.0;
  v_field.t_end = 0.3;
  const SpectralField v0 = random_band_limited(grid, rng, 2.0);
  for (int i = 0; i <= config.nt; ++i)
    v_field.fields.push_back(heat_step(v0, v_field.t_end * i / config.nt, problem.op()));
  const HJBResult result = solve_hjb_backward(problem, v_field, config);
  double v_sup = 0.0;
  for (const auto& f : v_field.fields) v_sup = std::max(v_sup, f.sup_norm());
  const double rhs = problem.uT.sup_norm() + 0.3 * v_sup;
  CHECK(result.diag.sup_norm_bound_slack >= -1e-6 * rhs);
}

TEST_CASE("adjoint solve") {
  const PeriodicGrid grid = make_grid(1, 64);
  const double T = 0.25;

  SUBCASE("x-independent u gives zero drift: rho is the heat flow") {
    const MFGProblem problem = benchmark_problem(grid, 0.6, T);
    SolverConfig config;
    config.nt = 64;
    config.integrator = Integrator::etd1;
    const Trajectory u = Trajectory::constant(SpectralField::constant(grid, 1.0), 0.0, T, config.nt);
    auto bump = SpectralField::sample(grid, [](const std::array<double, 2>& x) {
      return std::exp(4.0 * (std::cos(kTwoPi * x[0]) - 1.0));
    });
    const SpectralField rho0 = (1.0 / bump.mean()) * bump;
    const Trajectory rho = solve_adjoint(rho0, u, problem, 0, config);
    for (int i = 0; i <= config.nt; ++i) {
      const SpectralField expected = heat_step(rho0, rho.time(i), problem.op());
      CHECK(max_abs_diff(rho.fields[i], expected) < 1e-12);
    }
  }

  SUBCASE("mass exactly conserved along a genuine drift") {
    const MFGProblem problem = benchmark_problem(grid, 0.75, T);
    SolverConfig config;
    config.nt = 200;
    const Trajectory v_field = zero_coupling(grid, T, config.nt);
    const HJBResult hjb = solve_hjb_backward(problem, v_field, config);
    const SpectralField rho0 = SpectralField::constant(grid, 1.0);
    const Trajectory rho = solve_adjoint(rho0, hjb.u, problem, 0, config);
    for (const auto& f : rho.fields) CHECK(std::abs(f.mean() - 1.0) < 1e-12);
  }

  SUBCASE("tau_index out of range rejected") {
    const MFGProblem problem = benchmark_problem(grid, 0.75, T);
    SolverConfig config;
    config.nt = 16;
    const Trajectory u = Trajectory::constant(problem.uT, 0.0, T, config.nt);
    CHECK_THROWS_AS(solve_adjoint(problem.m0, u, problem, 16, config), std::invalid_argument);
  }
}

TEST_CASE("duality identity") {
  const PeriodicGrid grid = make_grid(1, 64);
  const double T = 0.25;

  SUBCASE("linear case (H = 0, V = 0) with ETD: residual < 1e-8") {
    std::mt19937_64 rng(7);
    const SpectralField uT = random_band_limited(grid, rng);
    const MFGProblem problem = linear_problem(grid, 0.75, T, uT);
    SolverConfig config;
    config.nt = 64;
    config.integrator = Integrator::etd1;
    const Trajectory v_field = zero_coupling(grid, T, config.nt);
    const HJBResult hjb = solve_hjb_backward(problem, v_field, config);
    auto bump = SpectralField::sample(grid, [](const std::array<double, 2>& x) {
      return std::exp(3.0 * (std::cos(kTwoPi * (x[0] - 0.3)) - 1.0));
    });
    const SpectralField rho0 = (1.0 / bump.mean()) * bump;
    const Trajectory rho = solve_adjoint(rho0, hjb.u, problem, 0, config);
    CHECK(duality_residual(hjb.u, rho, v_field, problem, 0) < 1e-8);
  }

  SUBCASE("constant u: both sides coincide exactly") {
    const MFGProblem problem =
        linear_problem(grid, 0.5, T, SpectralField::constant(grid, 3.0));
    SolverConfig config;
    config.nt = 32;
    const Trajectory v_field = zero_coupling(grid, T, config.nt);
    const HJBResult hjb = solve_hjb_backward(problem, v_field, config);
    const Trajectory rho =
        solve_adjoint(SpectralField::constant(grid, 1.0), hjb.u, problem, 0, config);
    CHECK(duality_residual(hjb.u, rho, v_field, problem, 0) < 1e-12);
  }

  SUBCASE("full nonlinear case: residual O(dt) under refinement") {
    const MFGProblem problem = benchmark_problem(grid, 0.75, T);
    auto residual_at = [&](int nt) {
      SolverConfig config;
      config.nt = nt;
      config.integrator = Integrator::etd1;
      Trajectory v_field;
      v_field.t_start = 0.0;
      v_field.t_end = T;
      for (int i = 0; i <= nt; ++i)
        v_field.fields.push_back(problem.coupling.apply(problem.m0));
      const HJBResult hjb = solve_hjb_backward(problem, v_field, config);
      const Trajectory rho = solve_adjoint(problem.m0, hjb.u, problem, 0, config);
      return duality_residual(hjb.u, rho, v_field, problem, 0);
    };
    const double coarse = residual_at(200);
    const double fine = residual_at(400);
    CHECK(fine < coarse);
    CHECK(fine < 1e-3);
  }
}

TEST_CASE("terminal condition is exact") {
  const PeriodicGrid grid = make_grid(1, 64);
  const MFGProblem problem = benchmark_problem(grid, 0.75, 0.2);
  SolverConfig config;
  config.nt = 50;
  const HJBResult result =
      solve_hjb_backward(problem, zero_coupling(grid, 0.2, config.nt), config);
  for (std::size_t i = 0; i < problem.uT.size(); ++i)
    CHECK(result.u.fields[config.nt].values()[i] == problem.uT.values()[i]);
}

TEST_CASE("lipschitz constant is stable under grid refinement") {
  auto lipschitz_at = [&](int n) {
    const PeriodicGrid grid = make_grid(1, n);
    const MFGProblem problem = benchmark_problem(grid, 0.75, 0.25);
    SolverConfig config;
    config.nt = 200;
    const Trajectory v_field =
        Trajectory::constant(problem.coupling.apply(problem.m0), 0.0, 0.25, config.nt);
    return solve_hjb_backward(problem, v_field, config).diag.lipschitz_constant;
  };
  const double coarse = lipschitz_at(64);
  const double fine = lipschitz_at(128);
  CHECK(std::isfinite(coarse));
  CHECK(fine < 1.25 * coarse);
  CHECK(coarse < 1.25 * fine);
}

TEST_CASE("residual ceiling raises an error when configured") {
  const PeriodicGrid grid = make_grid(1, 64);
  const MFGProblem problem = benchmark_problem(grid, 0.75, 0.2);
  SolverConfig config;
  config.nt = 16;  // deliberately coarse
  config.residual_ceiling = 1e-9;
  CHECK_THROWS_AS(solve_hjb_backward(problem, zero_coupling(grid, 0.2, config.nt), config),
                  std::runtime_error);
}

TEST_CASE("holder surrogate seminorm is finite on solved trajectories") {
  const PeriodicGrid grid = make_grid(1, 64);
  const MFGProblem problem = benchmark_problem(grid, 0.75, 0.25);
  SolverConfig config;
  config.nt = 100;
  const HJBResult hjb =
      solve_hjb_backward(problem, zero_coupling(grid, 0.25, config.nt), config);
  const double surrogate = parabolic_holder_surrogate(hjb.u, 0.5, 0.5 / (2.0 * problem.s));
  CHECK(std::isfinite(surrogate));
  CHECK(surrogate > 0.0);
}
