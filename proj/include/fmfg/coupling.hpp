#pragma once

#include <cstdint>

#include "fmfg/field.hpp"
#include "fmfg/report.hpp"

namespace fmfg {

/// monotone: F[m] = k * (k * m)      (strictly monotone when k_hat > 0)
/// generic:  F[m] = k * m
/// anti:     F[m] = -k * (k * m)     (monotonicity integral <= 0)
enum class CouplingMode { monotone, generic, anti };

/// Regularizing coupling built from convolution against a fixed smooth, even,
/// band-limited kernel; maps probability densities to smooth fields with
/// m-independent bounds.
class Coupling {
 public:
  Coupling(SpectralField kernel, CouplingMode mode);

  /// Kernel with k_hat(k) = exp(-|k|^2 / kappa^2) on |k| <= n/4, k_hat(0)=1.
  static Coupling gaussian(const PeriodicGrid& grid, double kappa, CouplingMode mode);

  /// Warns (returns normally) when the grid mean of m drifts from 1 by more
  /// than 1e-8; mid-iteration states may drift.
  SpectralField apply(const SpectralField& m) const;

  /// Lasry-Lions pairing: integral of (F[m1]-F[m2]) d(m1-m2).
  double monotonicity_integral(const SpectralField& m1, const SpectralField& m2) const;

  CouplingMode mode() const { return mode_; }
  const SpectralField& kernel() const { return kernel_; }

  /// Sup of the effective convolution kernel (k, or k * k); the uniform
  /// bound for |F[m]| over probability densities.
  double effective_kernel_sup() const { return kernel_sup_; }

 private:
  SpectralField kernel_;
  CouplingMode mode_;
  double kernel_sup_ = 0.0;
};

CouplingMode coupling_mode_from_string(const std::string& name);

/// Over random density pairs, worst ratio of the C^2 surrogate norm (sup of
/// value, gradient, second differences) of F[m1]-F[m2] to d_1(m1, m2).
InequalityReport verify_coupling_assumptions(const Coupling& coupling, const PeriodicGrid& grid,
                                             std::uint64_t seed, int samples,
                                             double ceiling = 1e3);

}  // namespace fmfg
