#include "fmfg/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fmfg/norms.hpp"

namespace fmfg {

namespace {

void check_densities(const SpectralField& m1, const SpectralField& m2) {
  if (!(m1.grid() == m2.grid())) throw std::invalid_argument("grid mismatch");
  const double floor1 = m1.min_value(), floor2 = m2.min_value();
  const double scale = std::max({1.0, m1.sup_norm(), m2.sup_norm()});
  if (floor1 < -1e-8 * scale || floor2 < -1e-8 * scale)
    throw std::invalid_argument("wasserstein1 requires nonnegative densities");
  if (std::abs(m1.mean() - m2.mean()) > 1e-8)
    throw std::invalid_argument("wasserstein1 requires equal masses");
}

double wasserstein1_circle(const SpectralField& m1, const SpectralField& m2) {
  const int n = m1.grid().n;
  const double h = m1.grid().spacing();
  // G(x_j) = integral over [0, x_j] of (m1 - m2); optimal shift c is the
  // median of {G_j} since the objective h * sum |G_j - c| is piecewise
  // linear in c with kinks exactly at the G_j.
  std::vector<double> cdf_gap(n);
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    acc += (m1.values()[j] - m2.values()[j]) * h;
    cdf_gap[j] = acc;
  }
  std::vector<double> sorted(cdf_gap);
  std::sort(sorted.begin(), sorted.end());
  const double median = 0.5 * (sorted[(n - 1) / 2] + sorted[n / 2]);
  double total = 0.0;
  for (double g : cdf_gap) total += std::abs(g - median);
  return total * h;
}

double wasserstein1_sinkhorn(const SpectralField& m1, const SpectralField& m2,
                             const SinkhornOptions& opts) {
  const auto& grid = m1.grid();
  const std::size_t total = grid.size();

  // Nonnegative weights normalized to probability vectors.
  std::vector<double> a(total), b(total);
  double sa = 0.0, sb = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    a[i] = std::max(m1.values()[i], 0.0) + 1e-300;
    b[i] = std::max(m2.values()[i], 0.0) + 1e-300;
    sa += a[i];
    sb += b[i];
  }
  for (std::size_t i = 0; i < total; ++i) {
    a[i] /= sa;
    b[i] /= sb;
  }

  std::vector<double> cost(total * total);
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < total; ++j) cost[i * total + j] = torus_distance(grid, i, j);

  std::vector<double> ladder;
  for (double eps = opts.eps_start; eps > opts.eps_floor; eps *= opts.anneal) ladder.push_back(eps);
  ladder.push_back(opts.eps_floor);

  std::vector<double> f(total, 0.0), g(total, 0.0);  // dual potentials
  for (double eps : ladder) {
    for (int it = 0; it < opts.iterations_per_level; ++it) {
      double shift = 0.0;
      // f-update (log-domain, stabilized by row max).
      for (std::size_t i = 0; i < total; ++i) {
        double mx = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < total; ++j)
          mx = std::max(mx, (g[j] - cost[i * total + j]) / eps);
        double s = 0.0;
        for (std::size_t j = 0; j < total; ++j)
          s += b[j] * std::exp((g[j] - cost[i * total + j]) / eps - mx);
        const double fi = -eps * (mx + std::log(s));
        shift = std::max(shift, std::abs(fi - f[i]));
        f[i] = fi;
      }
      for (std::size_t j = 0; j < total; ++j) {
        double mx = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < total; ++i)
          mx = std::max(mx, (f[i] - cost[i * total + j]) / eps);
        double s = 0.0;
        for (std::size_t i = 0; i < total; ++i)
          s += a[i] * std::exp((f[i] - cost[i * total + j]) / eps - mx);
        g[j] = -eps * (mx + std::log(s));
      }
      if (shift < opts.tol) break;
    }
  }
  double value = 0.0;
  for (std::size_t i = 0; i < total; ++i) value += f[i] * a[i];
  for (std::size_t j = 0; j < total; ++j) value += g[j] * b[j];
  return std::max(value, 0.0);
}

}  // namespace

double wasserstein1(const SpectralField& m1, const SpectralField& m2,
                    const SinkhornOptions& opts) {
  check_densities(m1, m2);
  if (m1.grid().dim == 1) return wasserstein1_circle(m1, m2);
  return wasserstein1_sinkhorn(m1, m2, opts);
}

}  // namespace fmfg
