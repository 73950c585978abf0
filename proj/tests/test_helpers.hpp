#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "fmfg/field.hpp"

namespace fmfg::test {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline SpectralField cosine(const PeriodicGrid& grid, int k, double amplitude = 1.0,
                            int axis = 0) {
  return SpectralField::sample(grid, [&](const std::array<double, 2>& x) {
    return amplitude * std::cos(kTwoPi * k * x[axis]);
  });
}

inline SpectralField sine(const PeriodicGrid& grid, int k, double amplitude = 1.0, int axis = 0) {
  return SpectralField::sample(grid, [&](const std::array<double, 2>& x) {
    return amplitude * std::sin(kTwoPi * k * x[axis]);
  });
}

inline double max_abs_diff(const SpectralField& a, const SpectralField& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
  return worst;
}

/// O(n^2) reference DFT in one dimension, normalized like the library.
inline std::complex<double> slow_dft_coeff_1d(const std::vector<double>& values, int k) {
  const int n = static_cast<int>(values.size());
  std::complex<double> acc = 0.0;
  for (int j = 0; j < n; ++j) {
    const double arg = -kTwoPi * k * j / static_cast<double>(n);
    acc += values[j] * std::complex<double>(std::cos(arg), std::sin(arg));
  }
  return acc / static_cast<double>(n);
}

}  // namespace fmfg::test
