#pragma once

#include <array>
#include <cstdint>

#include "fmfg/field.hpp"
#include "fmfg/report.hpp"

namespace fmfg {

/// Superlinear Hamiltonian family H(x,p) = c(x) ((1 + |p|^2)^{gamma/2} - 1)
/// with gamma in (1,2] and c(x) >= c0 > 0. Smooth in p everywhere (including
/// p = 0), convex in p, H(x,0) = 0, with closed-form derivatives.
class Hamiltonian {
 public:
  Hamiltonian(double gamma, SpectralField c_field);

  double gamma() const { return gamma_; }
  const SpectralField& c() const { return c_; }
  const VectorField& c_grad() const { return c_grad_; }
  double c_min() const { return c_min_; }

  // Pointwise closed forms; q = 1 + |p|^2.
  double value_at(double c, const std::array<double, 2>& p, int dim) const;
  std::array<double, 2> grad_p_at(double c, const std::array<double, 2>& p, int dim) const;
  double hess_pp_quadform(double c, const std::array<double, 2>& p,
                          const std::array<double, 2>& xi, int dim) const;

  /// H(x, p(x)) sampled on the grid.
  SpectralField value(const VectorField& p) const;
  /// D_p H(x, p(x)) sampled on the grid.
  VectorField grad_p(const VectorField& p) const;
  /// Per-node symmetric matrix D^2_pp H(x, p(x)): components (h11) in 1d and
  /// (h11, h12, h22) in 2d.
  std::vector<SpectralField> hess_pp(const VectorField& p) const;
  /// Pointwise Frobenius bound |D^2_{xx} H| and |D^2_{px} H| samplers used by
  /// the assumption verifier.
  double hess_xx_norm_at(std::size_t node, const std::array<double, 2>& p, int dim) const;
  double hess_px_norm_at(std::size_t node, const std::array<double, 2>& p, int dim) const;

 private:
  double gamma_;
  SpectralField c_;
  VectorField c_grad_;
  std::vector<SpectralField> c_hess_;  // (xx) in 1d; (xx, xy, yy) in 2d
  double c_min_;
};

/// Samples (x, p, xi) and reports the empirical constants that make
/// (H1)-(H5) hold on the sample; pass iff all are finite and the coercivity
/// constant is positive.
InequalityReport verify_hamiltonian_assumptions(const Hamiltonian& ham, std::uint64_t seed,
                                                int samples, double p_cap = 8.0);

}  // namespace fmfg
