#pragma once

#include <random>

#include "fmfg/field.hpp"

namespace fmfg {

/// Band-limited random field: complex Gaussian coefficients with power-law
/// decay |u_hat(k)| ~ (1+|k|)^{-decay_r} on modes |k_j| <= max_mode
/// (default n/4), Hermitian-symmetrized. Deterministic given the rng state.
SpectralField random_band_limited(const PeriodicGrid& grid, std::mt19937_64& rng,
                                  double decay_r = 1.0, int max_mode = -1);

/// As above but with flat (white) spectrum on the modes kmin <= |k| <= kmax.
SpectralField random_band_field(const PeriodicGrid& grid, std::mt19937_64& rng, int kmin,
                                int kmax);

/// Random probability density: 1 + scaled band-limited perturbation, exactly
/// mean 1 and with min >= min_gap.
SpectralField random_density(const PeriodicGrid& grid, std::mt19937_64& rng,
                             double roughness = 0.5, double min_gap = 0.05);

}  // namespace fmfg
