#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "fmfg/grid.hpp"

namespace fmfg {

/// Real periodic function sampled on a PeriodicGrid, carrying both the
/// physical samples and the Fourier coefficients u_hat(k), k in
/// {-n/2,...,n/2-1}^d, normalized so that u_hat(0) is the grid mean.
/// Immutable after construction; both representations are kept in sync.
class SpectralField {
 public:
  SpectralField() = default;

  /// Build from physical samples (runs one forward DFT).
  SpectralField(const PeriodicGrid& grid, std::vector<double> values);

  /// Build from Fourier coefficients (runs one inverse DFT, takes real part).
  static SpectralField from_coeffs(const PeriodicGrid& grid,
                                   std::vector<std::complex<double>> coeffs);

  /// Constant field; exact in both representations, no transform involved.
  static SpectralField constant(const PeriodicGrid& grid, double value);

  static SpectralField zeros(const PeriodicGrid& grid) { return constant(grid, 0.0); }

  /// Sample a function of the node coordinates.
  template <class F>
  static SpectralField sample(const PeriodicGrid& grid, F&& f) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.node(i));
    return SpectralField(grid, std::move(v));
  }

  const PeriodicGrid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }
  std::size_t size() const { return values_.size(); }

  /// Coefficient at signed wavenumber (k0, k1).
  std::complex<double> coeff(int k0, int k1 = 0) const;

  double mean() const { return coeffs_[0].real(); }
  double min_value() const;
  double max_value() const;
  double sup_norm() const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double a);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double a, SpectralField f) { return f *= a; }
  friend SpectralField operator*(SpectralField f, double a) { return f *= a; }

  /// Internal fast path when both representations are already consistent.
  static SpectralField from_parts(const PeriodicGrid& grid, std::vector<double> values,
                                  std::vector<std::complex<double>> coeffs);

 private:
  PeriodicGrid grid_{};
  std::vector<double> values_;
  std::vector<std::complex<double>> coeffs_;
};

/// Pointwise product sampled on the grid (aliases unless followed by dealias).
SpectralField multiply(const SpectralField& a, const SpectralField& b);

/// d SpectralFields sharing one grid; houses gradients and drifts.
struct VectorField {
  std::vector<SpectralField> comps;

  const PeriodicGrid& grid() const { return comps.front().grid(); }
  int dim() const { return static_cast<int>(comps.size()); }

  /// max over nodes of the Euclidean length |v(x)|.
  double sup_norm() const;
};

namespace detail {
/// Normalized forward DFT: coeffs[k] = (1/N) sum_j values[j] e^{-2pi i k.x_j}.
void dft_forward(const PeriodicGrid& grid, const std::vector<double>& values,
                 std::vector<std::complex<double>>& coeffs);
/// Inverse DFT, real part: values[j] = Re sum_k coeffs[k] e^{+2pi i k.x_j}.
void dft_inverse(const PeriodicGrid& grid, const std::vector<std::complex<double>>& coeffs,
                 std::vector<double>& values);
}  // namespace detail

}  // namespace fmfg
