#include "fmfg/verifiers.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "fmfg/norms.hpp"
#include "fmfg/random_fields.hpp"
#include "fmfg/spectral_ops.hpp"

namespace fmfg {

std::vector<CompositionMap> standard_composition_maps() {
  return {
      {"identity", [](const std::array<double, 2>&, double v) { return v; }},
      {"sin", [](const std::array<double, 2>&, double v) { return std::sin(v); }},
      {"smooth_abs", [](const std::array<double, 2>&, double v) { return std::sqrt(1.0 + v * v) - 1.0; }},
      {"x_modulated_sin",
       [](const std::array<double, 2>& x, double v) {
         return std::cos(2.0 * std::numbers::pi * x[0]) * std::sin(v);
       }},
  };
}

InequalityReport verify_interpolation_inequality(const PeriodicGrid& grid, double s_exp, double p,
                                                 std::uint64_t seed, int samples) {
  if (!(s_exp > 0.0 && s_exp < 1.0)) throw std::invalid_argument("s must lie in (0,1)");
  if (!(p > 1.0)) throw std::invalid_argument("p must lie in (1,inf)");
  const int deriv_order = s_exp < 0.5 ? 1 : 2;

  const std::vector<double> deltas{1.0, 0.5, 0.1};
  std::vector<double> worst_c(deltas.size(), 0.0);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples; ++i) {
    const SpectralField u = random_band_limited(grid, rng, 1.0 + (i % 3));
    const double lhs = lp_norm(fractional_laplacian(u, s_exp), p);
    const double un = lp_norm(u, p);
    double dn = 0.0;
    if (deriv_order == 1) {
      const VectorField du = gradient(u);
      // |Du| entering the L^p norm as the Euclidean length.
      std::vector<double> mag(u.size());
      for (std::size_t j = 0; j < mag.size(); ++j) {
        double sq = 0.0;
        for (const auto& c : du.comps) sq += c.values()[j] * c.values()[j];
        mag[j] = std::sqrt(sq);
      }
      dn = lp_norm(SpectralField(grid, std::move(mag)), p);
    } else {
      dn = lp_norm(laplacian(u), p);
    }
    if (un <= 0.0) continue;
    for (std::size_t d = 0; d < deltas.size(); ++d)
      worst_c[d] = std::max(worst_c[d], (lhs - deltas[d] * dn) / un);
  }

  InequalityReport rep;
  rep.name = "interpolation_inequality";
  rep.samples = samples;
  rep.seed = seed;
  rep.worst_ratio = worst_c.back();
  rep.pass = true;
  for (double c : worst_c) rep.pass = rep.pass && std::isfinite(c);
  rep.config = {{"s", s_exp}, {"p", p}, {"derivative_order", deriv_order}};
  rep.details = {{"deltas", deltas}, {"empirical_C", worst_c}};
  return rep;
}

InequalityReport verify_kato_ponce(const PeriodicGrid& grid, double mu,
                                   const KatoPonceExponents& exps, std::uint64_t seed, int samples,
                                   double ceiling) {
  if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("mu must lie in (0,1)");
  const double holder1 = 1.0 / exps.p1 + 1.0 / exps.q1;
  const double holder2 = 1.0 / exps.p2 + 1.0 / exps.q2;
  if (std::abs(holder1 - 1.0 / exps.p) > 1e-12 || std::abs(holder2 - 1.0 / exps.p) > 1e-12)
    throw std::invalid_argument("exponents must satisfy 1/p = 1/p1 + 1/q1 = 1/p2 + 1/q2");

  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const SpectralField f = random_band_limited(grid, rng, 1.0 + (i % 3));
    const SpectralField g = random_band_limited(grid, rng, 1.0 + ((i + 1) % 3));
    const double lhs = bessel_norm(multiply(f, g), mu, exps.p);
    const double rhs = lp_norm(f, exps.p1) * bessel_norm(g, mu, exps.q1) +
                       bessel_norm(f, mu, exps.p2) * lp_norm(g, exps.q2);
    if (rhs > 0.0) worst = std::max(worst, lhs / rhs);
  }

  InequalityReport rep;
  rep.name = "kato_ponce";
  rep.samples = samples;
  rep.seed = seed;
  rep.worst_ratio = worst;
  rep.pass = std::isfinite(worst) && worst < ceiling;
  rep.config = {{"mu", mu},     {"p", exps.p},   {"p1", exps.p1},      {"q1", exps.q1},
                {"p2", exps.p2}, {"q2", exps.q2}, {"ceiling", ceiling}};
  return rep;
}

InequalityReport verify_chain_rule(const PeriodicGrid& grid, double mu, double p,
                                   const CompositionMap& psi, std::uint64_t seed, int samples,
                                   double eps, double ceiling) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const SpectralField u = random_band_limited(grid, rng, 1.0 + (i % 3));
    std::vector<double> comp(u.size());
    for (std::size_t j = 0; j < comp.size(); ++j)
      comp[j] = psi.value(grid.node(j), u.values()[j]);
    const double lhs = bessel_norm(SpectralField(grid, std::move(comp)), mu - eps, p);
    worst = std::max(worst, lhs / (bessel_norm(u, mu, p) + 1.0));
  }

  InequalityReport rep;
  rep.name = "chain_rule_" + psi.label;
  rep.samples = samples;
  rep.seed = seed;
  rep.worst_ratio = worst;
  rep.pass = std::isfinite(worst) && worst < ceiling;
  rep.config = {{"mu", mu}, {"p", p}, {"eps", eps}, {"psi", psi.label}, {"ceiling", ceiling}};
  return rep;
}

namespace {

double holder_quotient(const Trajectory& traj, double mu, double p, double exponent, int stride) {
  double sup = 0.0;
  const int nt = traj.steps();
  for (int i = 0; i <= nt; i += stride)
    for (int j = i + stride; j <= nt; j += stride) {
      const double dtau = traj.time(j) - traj.time(i);
      const double num = bessel_norm(traj.fields[j] - traj.fields[i], mu, p);
      sup = std::max(sup, num / std::pow(dtau, exponent));
    }
  return sup;
}

}  // namespace

InequalityReport verify_time_embedding(const Trajectory& traj, double mu, double p, double s_exp,
                                       double beta) {
  if (!(beta > s_exp / p && beta < s_exp))
    throw std::invalid_argument("beta must lie in (s/p, s)");
  if (traj.steps() + 1 < 16) throw std::invalid_argument("need at least 16 time samples");

  const double exponent = beta / s_exp - 1.0 / p;
  const double full = holder_quotient(traj, mu - 2.0 * beta, p, exponent, 1);
  const double half = holder_quotient(traj, mu - 2.0 * beta, p, exponent, 2);

  InequalityReport rep;
  rep.name = "time_embedding";
  rep.samples = traj.steps() + 1;
  rep.worst_ratio = full;
  const double stability = half > 0.0 ? full / half : 1.0;
  rep.pass = std::isfinite(full) && stability < 2.0;
  rep.config = {{"mu", mu}, {"p", p}, {"s", s_exp}, {"beta", beta}};
  rep.details = {{"quotient_full", full}, {"quotient_half", half}, {"stability", stability}};
  return rep;
}

}  // namespace fmfg
