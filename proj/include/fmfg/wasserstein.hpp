#pragma once

#include "fmfg/field.hpp"

namespace fmfg {

struct SinkhornOptions {
  double eps_start = 0.1;
  double eps_floor = 2e-3;
  double anneal = 0.5;
  int iterations_per_level = 200;
  double tol = 1e-10;
};

/// Monge-Kantorovich distance d_1 between two probability densities on the
/// torus. In 1d this is exact: min over the shift c of the integral of
/// |F_{m1} - F_{m2} - c|, the minimizer being the weighted median. In 2d it
/// is approximated by entropic optimal transport (Sinkhorn) with the geodesic
/// torus cost and annealed regularization; diagnostic use only.
/// Requires both fields nonnegative (to -1e-8) with grid means equal to 1e-8.
double wasserstein1(const SpectralField& m1, const SpectralField& m2,
                    const SinkhornOptions& opts = {});

}  // namespace fmfg
