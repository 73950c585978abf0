#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "fmfg/field.hpp"

namespace fmfg {

/// Fourier multiplier k |-> lambda(k). Symbols of real operators satisfy
/// lambda(-k) = conj(lambda(k)).
struct FourierSymbol {
  std::function<std::complex<double>(const std::array<int, 2>&)> eval;
  std::string label;
};

namespace symbols {
FourierSymbol identity();
/// (1 + 4 pi^2 |k|^2)^{mu/2}
FourierSymbol bessel(double mu);
/// (2 pi |k|)^{2s}
FourierSymbol fractional_laplacian(double s);
}  // namespace symbols

/// Output coefficients are lambda(k) * u_hat(k). Throws on a non-finite
/// symbol value at a represented mode.
SpectralField apply_multiplier(const SpectralField& f, const FourierSymbol& sym);

/// Spectral (-Delta)^s for s in (0,1): multiplier (2 pi |k|)^{2s}, zero mode
/// annihilated, Nyquist rows zeroed.
SpectralField fractional_laplacian(const SpectralField& f, double s_exp);

/// Spectral Laplacian: multiplier -(2 pi |k|)^2, Nyquist rows zeroed.
SpectralField laplacian(const SpectralField& f);

/// Component j carries 2 pi i k_j u_hat(k); Nyquist rows zeroed.
VectorField gradient(const SpectralField& f);

/// sum_j 2 pi i k_j v_hat_j(k); output has exactly zero mean.
SpectralField divergence(const VectorField& v);

/// Two-thirds rule: zero every coefficient with some |k_j| > n/3. Idempotent.
SpectralField dealias(const SpectralField& f);

/// Max over nodes of (f(x+h xi) - 2 f(x) + f(x-h xi)) / (h^2 |xi|^2), one
/// entry per unit direction (axes, plus diagonals in 2d).
std::vector<double> second_difference_hessian_bound(const SpectralField& f);

/// Max of second_difference_hessian_bound over directions (monitor for
/// one-sided D^2 u <= C I bounds).
double semiconcavity_bound(const SpectralField& f);

}  // namespace fmfg
