#pragma once

#include <cstdint>
#include <limits>

#include "fmfg/field.hpp"

namespace fmfg {

enum class NormKind { bessel, lp, holder_seminorm };

struct NormSpec {
  double mu = 0.0;
  double p = 2.0;
  NormKind kind = NormKind::bessel;
};

constexpr double kInfExponent = std::numeric_limits<double>::infinity();

/// Rectangle-rule L^p norm: (grid mean of |f|^p)^{1/p}; p = inf gives sup.
double lp_norm(const SpectralField& f, double p);

/// Bessel potential norm: L^p norm of (I - Delta)^{mu/2} f. For p = 2 this
/// equals the Parseval sum (sum_k (1+4pi^2|k|^2)^mu |u_hat(k)|^2)^{1/2}.
double bessel_norm(const SpectralField& f, double mu, double p);

/// L^2(T^d) inner product as the grid mean of the product.
double inner_product(const SpectralField& f, const SpectralField& g);

/// Geodesic torus distance between nodes a and b.
double torus_distance(const PeriodicGrid& grid, std::size_t a, std::size_t b);

/// Discrete Holder seminorm sup |f(x)-f(y)| / dist(x,y)^alpha. All pairs in
/// 1d; at least `min_pairs` seeded random pairs in 2d.
double holder_seminorm(const SpectralField& f, double alpha, std::uint64_t seed = 2024,
                       std::size_t min_pairs = 10000);

double evaluate_norm(const SpectralField& f, const NormSpec& spec);

}  // namespace fmfg
