#include "fmfg/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "fmfg/spectral_ops.hpp"

namespace fmfg {

double lp_norm(const SpectralField& f, double p) {
  if (p == kInfExponent) return f.sup_norm();
  if (!(p >= 1.0)) throw std::invalid_argument("integrability exponent must be >= 1");
  double acc = 0.0;
  if (p == 2.0) {
    for (double v : f.values()) acc += v * v;
  } else {
    for (double v : f.values()) acc += std::pow(std::abs(v), p);
  }
  return std::pow(acc / static_cast<double>(f.size()), 1.0 / p);
}

double bessel_norm(const SpectralField& f, double mu, double p) {
  if (!(p > 1.0)) throw std::invalid_argument("bessel norm requires p in (1,inf)");
  if (p == 2.0) {
    // Parseval route, exact mode-wise.
    const double two_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;
    double acc = 0.0;
    const auto& grid = f.grid();
    const int n = grid.n;
    const auto& coeffs = f.coeffs();
    if (grid.dim == 1) {
      for (int i = 0; i < n; ++i) {
        const double k = wavenumber(i, n);
        acc += std::pow(1.0 + two_pi_sq * k * k, mu) * std::norm(coeffs[i]);
      }
    } else {
      std::size_t idx = 0;
      for (int i0 = 0; i0 < n; ++i0)
        for (int i1 = 0; i1 < n; ++i1, ++idx) {
          const double k0 = wavenumber(i0, n), k1 = wavenumber(i1, n);
          acc += std::pow(1.0 + two_pi_sq * (k0 * k0 + k1 * k1), mu) * std::norm(coeffs[idx]);
        }
    }
    return std::sqrt(acc);
  }
  return lp_norm(apply_multiplier(f, symbols::bessel(mu)), p);
}

double inner_product(const SpectralField& f, const SpectralField& g) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("grid mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += f.values()[i] * g.values()[i];
  return acc / static_cast<double>(f.size());
}

double torus_distance(const PeriodicGrid& grid, std::size_t a, std::size_t b) {
  const auto xa = grid.node(a);
  const auto xb = grid.node(b);
  double sq = 0.0;
  for (int j = 0; j < grid.dim; ++j) {
    double d = std::abs(xa[j] - xb[j]);
    d = std::min(d, 1.0 - d);
    sq += d * d;
  }
  return std::sqrt(sq);
}

double holder_seminorm(const SpectralField& f, double alpha, std::uint64_t seed,
                       std::size_t min_pairs) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0,1]");
  const auto& grid = f.grid();
  const auto& v = f.values();
  double worst = 0.0;
  if (grid.dim == 1) {
    for (std::size_t a = 0; a < v.size(); ++a)
      for (std::size_t b = a + 1; b < v.size(); ++b) {
        const double q = std::abs(v[a] - v[b]) / std::pow(torus_distance(grid, a, b), alpha);
        worst = std::max(worst, q);
      }
    return worst;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, v.size() - 1);
  std::size_t drawn = 0;
  while (drawn < min_pairs) {
    const std::size_t a = pick(rng), b = pick(rng);
    if (a == b) continue;
    ++drawn;
    const double q = std::abs(v[a] - v[b]) / std::pow(torus_distance(grid, a, b), alpha);
    worst = std::max(worst, q);
  }
  return worst;
}

double evaluate_norm(const SpectralField& f, const NormSpec& spec) {
  switch (spec.kind) {
    case NormKind::bessel:
      return bessel_norm(f, spec.mu, spec.p);
    case NormKind::lp:
      return lp_norm(f, spec.p);
    case NormKind::holder_seminorm:
      return holder_seminorm(f, spec.mu);
  }
  throw std::logic_error("unknown norm kind");
}

}  // namespace fmfg
