#include "fmfg/spectral_ops.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fmfg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Iterate all represented modes; cb(flat_index, kvec).
template <class Cb>
void for_each_mode(const PeriodicGrid& grid, Cb&& cb) {
  const int n = grid.n;
  if (grid.dim == 1) {
    for (int i = 0; i < n; ++i) cb(static_cast<std::size_t>(i), std::array<int, 2>{wavenumber(i, n), 0});
  } else {
    std::size_t idx = 0;
    for (int i0 = 0; i0 < n; ++i0)
      for (int i1 = 0; i1 < n; ++i1, ++idx)
        cb(idx, std::array<int, 2>{wavenumber(i0, n), wavenumber(i1, n)});
  }
}

bool at_nyquist(const std::array<int, 2>& k, int n, int dim) {
  for (int j = 0; j < dim; ++j)
    if (k[j] == -n / 2) return true;
  return false;
}

}  // namespace

namespace symbols {

FourierSymbol identity() {
  return {[](const std::array<int, 2>&) { return std::complex<double>(1.0, 0.0); }, "identity"};
}

FourierSymbol bessel(double mu) {
  return {[mu](const std::array<int, 2>& k) {
            const double k2 = static_cast<double>(k[0]) * k[0] + static_cast<double>(k[1]) * k[1];
            return std::complex<double>(std::pow(1.0 + kTwoPi * kTwoPi * k2, 0.5 * mu), 0.0);
          },
          "bessel"};
}

FourierSymbol fractional_laplacian(double s) {
  return {[s](const std::array<int, 2>& k) {
            const double k2 = static_cast<double>(k[0]) * k[0] + static_cast<double>(k[1]) * k[1];
            if (k2 == 0.0) return std::complex<double>(0.0, 0.0);
            return std::complex<double>(std::pow(kTwoPi * std::sqrt(k2), 2.0 * s), 0.0);
          },
          "fractional_laplacian"};
}

}  // namespace symbols

SpectralField apply_multiplier(const SpectralField& f, const FourierSymbol& sym) {
  std::vector<std::complex<double>> out(f.coeffs());
  for_each_mode(f.grid(), [&](std::size_t idx, const std::array<int, 2>& k) {
    const std::complex<double> lambda = sym.eval(k);
    if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
      throw std::runtime_error("non-finite symbol value in multiplier '" + sym.label + "'");
    out[idx] *= lambda;
  });
  return SpectralField::from_coeffs(f.grid(), std::move(out));
}

namespace {

SpectralField scaled_modes(const SpectralField& f,
                           const std::function<std::complex<double>(const std::array<int, 2>&)>& lam,
                           bool zero_nyquist) {
  const auto& grid = f.grid();
  std::vector<std::complex<double>> out(f.coeffs());
  for_each_mode(grid, [&](std::size_t idx, const std::array<int, 2>& k) {
    if (zero_nyquist && at_nyquist(k, grid.n, grid.dim)) {
      out[idx] = 0.0;
      return;
    }
    out[idx] *= lam(k);
  });
  return SpectralField::from_coeffs(grid, std::move(out));
}

}  // namespace

SpectralField fractional_laplacian(const SpectralField& f, double s_exp) {
  if (!(s_exp > 0.0 && s_exp < 1.0)) throw std::invalid_argument("fractional order must lie in (0,1)");
  auto sym = symbols::fractional_laplacian(s_exp);
  return scaled_modes(f, sym.eval, /*zero_nyquist=*/true);
}

SpectralField laplacian(const SpectralField& f) {
  return scaled_modes(
      f,
      [](const std::array<int, 2>& k) {
        const double k2 = static_cast<double>(k[0]) * k[0] + static_cast<double>(k[1]) * k[1];
        return std::complex<double>(-kTwoPi * kTwoPi * k2, 0.0);
      },
      /*zero_nyquist=*/true);
}

VectorField gradient(const SpectralField& f) {
  const auto& grid = f.grid();
  VectorField g;
  for (int j = 0; j < grid.dim; ++j) {
    g.comps.push_back(scaled_modes(
        f,
        [j](const std::array<int, 2>& k) { return std::complex<double>(0.0, kTwoPi * k[j]); },
        /*zero_nyquist=*/true));
  }
  return g;
}

SpectralField divergence(const VectorField& v) {
  const auto& grid = v.grid();
  for (const auto& c : v.comps)
    if (!(c.grid() == grid)) throw std::invalid_argument("grid mismatch in divergence");
  std::vector<std::complex<double>> out(grid.size());
  for (int j = 0; j < grid.dim; ++j) {
    const auto& coeffs = v.comps[j].coeffs();
    for_each_mode(grid, [&](std::size_t idx, const std::array<int, 2>& k) {
      if (at_nyquist(k, grid.n, grid.dim)) return;
      out[idx] += std::complex<double>(0.0, kTwoPi * k[j]) * coeffs[idx];
    });
  }
  out[0] = 0.0;
  return SpectralField::from_coeffs(grid, std::move(out));
}

SpectralField dealias(const SpectralField& f) {
  const auto& grid = f.grid();
  const int cutoff = grid.n / 3;
  std::vector<std::complex<double>> out(f.coeffs());
  bool changed = false;
  for_each_mode(grid, [&](std::size_t idx, const std::array<int, 2>& k) {
    for (int j = 0; j < grid.dim; ++j) {
      if (std::abs(k[j]) > cutoff) {
        if (out[idx] != std::complex<double>(0.0, 0.0)) changed = true;
        out[idx] = 0.0;
        return;
      }
    }
  });
  if (!changed) return f;
  return SpectralField::from_coeffs(grid, std::move(out));
}

std::vector<double> second_difference_hessian_bound(const SpectralField& f) {
  const auto& grid = f.grid();
  const int n = grid.n;
  const double h = grid.spacing();
  const auto& v = f.values();

  std::vector<std::array<int, 2>> dirs;
  dirs.push_back({1, 0});
  if (grid.dim == 2) {
    dirs.push_back({0, 1});
    dirs.push_back({1, 1});
    dirs.push_back({1, -1});
  }

  std::vector<double> maxima;
  maxima.reserve(dirs.size());
  for (const auto& xi : dirs) {
    const double xi_sq = static_cast<double>(xi[0]) * xi[0] + static_cast<double>(xi[1]) * xi[1];
    double worst = -std::numeric_limits<double>::infinity();
    if (grid.dim == 1) {
      for (int j = 0; j < n; ++j) {
        const int jp = (j + xi[0] + n) % n;
        const int jm = (j - xi[0] + n) % n;
        worst = std::max(worst, (v[jp] - 2.0 * v[j] + v[jm]) / (h * h * xi_sq));
      }
    } else {
      for (int j0 = 0; j0 < n; ++j0) {
        for (int j1 = 0; j1 < n; ++j1) {
          const std::size_t c = grid.flatten(j0, j1);
          const std::size_t p = grid.flatten((j0 + xi[0] + n) % n, (j1 + xi[1] + n) % n);
          const std::size_t m = grid.flatten((j0 - xi[0] + n) % n, (j1 - xi[1] + n) % n);
          worst = std::max(worst, (v[p] - 2.0 * v[c] + v[m]) / (h * h * xi_sq));
        }
      }
    }
    maxima.push_back(worst);
  }
  return maxima;
}

double semiconcavity_bound(const SpectralField& f) {
  double worst = -std::numeric_limits<double>::infinity();
  for (double m : second_difference_hessian_bound(f)) worst = std::max(worst, m);
  return worst;
}

}  // namespace fmfg
