#include "fmfg/random_fields.hpp"

#include <cmath>

namespace fmfg {

namespace {

// Fill Hermitian pairs from a per-mode amplitude; iterate the half-space
// in a fixed lexicographic order so draws are reproducible.
template <class Amp>
SpectralField hermitian_random(const PeriodicGrid& grid, std::mt19937_64& rng, Amp&& amplitude) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::complex<double>> coeffs(grid.size());
  const int n = grid.n;

  auto set_pair = [&](int k0, int k1) {
    const double a = amplitude(k0, k1);
    if (a == 0.0) return;
    const std::complex<double> z(gauss(rng) * a, gauss(rng) * a);
    const std::size_t idx = grid.dim == 1 ? static_cast<std::size_t>(mode_index(k0, n))
                                          : grid.flatten(mode_index(k0, n), mode_index(k1, n));
    const std::size_t conj_idx = grid.dim == 1
                                     ? static_cast<std::size_t>(mode_index(-k0, n))
                                     : grid.flatten(mode_index(-k0, n), mode_index(-k1, n));
    coeffs[idx] = z;
    coeffs[conj_idx] = std::conj(z);
  };

  if (grid.dim == 1) {
    for (int k = 1; k < n / 2; ++k) set_pair(k, 0);
  } else {
    // Half-space: k0 > 0, or k0 == 0 and k1 > 0.
    for (int k0 = 0; k0 < n / 2; ++k0)
      for (int k1 = -n / 2 + 1; k1 < n / 2; ++k1) {
        if (k0 == 0 && k1 <= 0) continue;
        set_pair(k0, k1);
      }
  }
  return SpectralField::from_coeffs(grid, std::move(coeffs));
}

}  // namespace

SpectralField random_band_limited(const PeriodicGrid& grid, std::mt19937_64& rng, double decay_r,
                                  int max_mode) {
  const int cap = max_mode > 0 ? max_mode : grid.n / 4;
  return hermitian_random(grid, rng, [&](int k0, int k1) {
    if (std::abs(k0) > cap || std::abs(k1) > cap) return 0.0;
    const double kabs = std::sqrt(static_cast<double>(k0) * k0 + static_cast<double>(k1) * k1);
    return std::pow(1.0 + kabs, -decay_r);
  });
}

SpectralField random_band_field(const PeriodicGrid& grid, std::mt19937_64& rng, int kmin,
                                int kmax) {
  return hermitian_random(grid, rng, [&](int k0, int k1) {
    const double kabs = std::sqrt(static_cast<double>(k0) * k0 + static_cast<double>(k1) * k1);
    return (kabs >= kmin && kabs <= kmax) ? 1.0 : 0.0;
  });
}

SpectralField random_density(const PeriodicGrid& grid, std::mt19937_64& rng, double roughness,
                             double min_gap) {
  SpectralField p = random_band_limited(grid, rng, 2.0);
  const double low = p.min_value();
  double scale = roughness / std::max(1e-12, p.sup_norm());
  if (low < 0.0) scale = std::min(scale, (1.0 - min_gap) / (-low));
  // Zero mode of p vanishes by construction, so the mean stays exactly 1.
  return SpectralField::constant(grid, 1.0) + scale * p;
}

}  // namespace fmfg
