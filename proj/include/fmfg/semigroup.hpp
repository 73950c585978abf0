#pragma once

#include <span>
#include <vector>

#include "fmfg/field.hpp"
#include "fmfg/report.hpp"
#include "fmfg/spectral_ops.hpp"

namespace fmfg {

enum class Integrator { imex, etd1 };

/// Generator of the (viscous) fractional heat semigroup. The represented
/// symbol is lambda(k) = sigma (2 pi |k|)^2 + (2 pi |k|)^{2s}: real,
/// nonnegative, radially nondecreasing, lambda(0) = 0.
struct EvolutionOperator {
  double s = 0.5;
  double sigma = 0.0;

  double lambda(const std::array<int, 2>& k) const;
  FourierSymbol heat_symbol(double t) const;
};

/// Uniformly time-sampled sequence of fields on [t_start, t_end].
struct Trajectory {
  double t_start = 0.0;
  double t_end = 0.0;
  std::vector<SpectralField> fields;

  int steps() const { return static_cast<int>(fields.size()) - 1; }
  double dt() const { return (t_end - t_start) / steps(); }
  double time(int i) const { return t_start + i * dt(); }

  static Trajectory constant(const SpectralField& f, double t0, double t1, int nt);
};

/// Drift histories b(.,t) for the transport terms.
struct DriftTrajectory {
  double t_start = 0.0;
  double t_end = 0.0;
  std::vector<VectorField> fields;

  int steps() const { return static_cast<int>(fields.size()) - 1; }
  double dt() const { return (t_end - t_start) / steps(); }
};

/// e^{-t lambda(k)} mode-wise; mass (zero mode) preserved exactly. t = 0
/// returns f unchanged.
SpectralField heat_step(const SpectralField& f, double t, const EvolutionOperator& op);

/// Implicit-Euler IMEX step: (1 + dt lambda)^{-1} (f_hat + dt source_hat).
SpectralField imex_step(const SpectralField& f, const SpectralField& source, double dt,
                        const EvolutionOperator& op);

/// Exact exponential integrator (ETD1): e^{-dt lambda} f_hat +
/// (1 - e^{-dt lambda})/lambda source_hat, with the lambda -> 0 limit dt.
SpectralField etd1_step(const SpectralField& f, const SpectralField& source, double dt,
                        const EvolutionOperator& op);

SpectralField evolution_step(const SpectralField& f, const SpectralField& source, double dt,
                             const EvolutionOperator& op, Integrator integrator);

/// Apply the generator itself: coefficients scaled by lambda(k).
SpectralField apply_generator(const SpectralField& f, const EvolutionOperator& op);

/// Orbit t -> T_t f sampled on nt+1 uniform times in [0, T].
Trajectory semigroup_orbit(const SpectralField& f, const EvolutionOperator& op, double T, int nt);

/// Log-log fit of ||T_t f||_{nu+gamma,p} against a geometric ladder. The
/// report carries the empirical constant sup_t ||T_t f|| t^{gamma/2s} / ||f||
/// as worst_ratio; pass means that constant is finite (the estimate is an
/// upper bound). For gamma = 0 the norms must also be nonincreasing.
InequalityReport measure_decay_rate(const SpectralField& f, double nu, double gamma, double p,
                                    const EvolutionOperator& op, std::span<const double> times);

/// Same fit on the envelope sup over a corpus of per-field norm ratios; for a
/// corpus of band-concentrated rough fields the fitted exponent approaches
/// -gamma/2s, and pass additionally requires it within `rate_tol` of that.
InequalityReport measure_decay_rate_envelope(std::span<const SpectralField> corpus, double nu,
                                             double gamma, double p, const EvolutionOperator& op,
                                             std::span<const double> times, double rate_tol = 0.1);

/// Fit of ||T_t f - f||_p as t -> 0; pass requires fitted exponent >=
/// theta/s - rate_tol whenever the difference is resolvable.
InequalityReport measure_continuity_rate(const SpectralField& f, double theta, double p,
                                         const EvolutionOperator& op,
                                         std::span<const double> times, double rate_tol = 0.1);

}  // namespace fmfg
