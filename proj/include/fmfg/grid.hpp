#pragma once

#include <array>
#include <cstddef>

namespace fmfg {

/// Uniform grid on the flat torus [0,1)^d with n points per dimension.
/// Node j maps to x_j = j*h, h = 1/n. Only d = 1, 2 are supported.
struct PeriodicGrid {
  int dim = 1;
  int n = 0;

  double spacing() const { return 1.0 / n; }

  std::size_t size() const {
    return dim == 1 ? static_cast<std::size_t>(n)
                    : static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  }

  std::size_t flatten(int j0, int j1 = 0) const {
    return dim == 1 ? static_cast<std::size_t>(j0)
                    : static_cast<std::size_t>(j0) * n + static_cast<std::size_t>(j1);
  }

  /// Coordinates of the node with flat index `idx` (second entry 0 in 1d).
  std::array<double, 2> node(std::size_t idx) const {
    const double h = spacing();
    if (dim == 1) return {static_cast<double>(idx) * h, 0.0};
    return {static_cast<double>(idx / n) * h, static_cast<double>(idx % n) * h};
  }

  bool operator==(const PeriodicGrid&) const = default;
};

/// Validating factory: d in {1,2}, n even and >= 8.
PeriodicGrid make_grid(int dim, int n);

/// FFT storage index -> signed wavenumber in {-n/2, ..., n/2-1}.
constexpr int wavenumber(int index, int n) { return index < n / 2 ? index : index - n; }

/// Inverse of `wavenumber`.
constexpr int mode_index(int k, int n) { return k >= 0 ? k : k + n; }

}  // namespace fmfg
