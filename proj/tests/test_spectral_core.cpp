#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fmfg/norms.hpp"
#include "fmfg/random_fields.hpp"
#include "fmfg/spectral_ops.hpp"
#include "test_helpers.hpp"

using namespace fmfg;
using namespace fmfg::test;

TEST_CASE("make_grid validates its inputs") {
  const PeriodicGrid g1 = make_grid(1, 64);
  CHECK(g1.spacing() == doctest::Approx(1.0 / 64).epsilon(1e-15));
  CHECK(g1.size() == 64);

  const PeriodicGrid g2 = make_grid(2, 32);
  CHECK(g2.size() == 1024);

  CHECK_THROWS_AS(make_grid(1, 7), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1, 4), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(3, 16), std::invalid_argument);
}

TEST_CASE("apply_multiplier scales modes by the symbol") {
  const PeriodicGrid grid = make_grid(1, 64);

  SUBCASE("constant field sees only lambda(0)") {
    const SpectralField one = SpectralField::constant(grid, 1.0);
    const SpectralField out = apply_multiplier(one, symbols::bessel(2.0));
    for (double v : out.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
  }

  SUBCASE("bessel multiplier on cos(2 pi x), mu = 2") {
    const SpectralField f = cosine(grid, 1);
    const SpectralField out = apply_multiplier(f, symbols::bessel(2.0));
    const double factor = 1.0 + 4.0 * std::numbers::pi * std::numbers::pi;
    CHECK(max_abs_diff(out, factor * f) < 1e-12 * factor);
  }

  SUBCASE("identity symbol round trip is bit-identical on coefficient-built fields") {
    std::mt19937_64 rng(7);
    const SpectralField f = random_band_limited(grid, rng);
    const SpectralField out = apply_multiplier(f, symbols::identity());
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(out.values()[i] == f.values()[i]);
  }

  SUBCASE("forward-inverse round trip within 1e-12 relative, all grids") {
    for (const auto& grid2 : {make_grid(1, 8), make_grid(1, 256), make_grid(2, 16)}) {
      std::mt19937_64 rng(11);
      std::normal_distribution<double> gauss;
      std::vector<double> values(grid2.size());
      for (auto& v : values) v = gauss(rng);
      const SpectralField f(grid2, values);
      const SpectralField back = SpectralField::from_coeffs(grid2, f.coeffs());
      CHECK(max_abs_diff(f, back) < 1e-12 * f.sup_norm());
    }
  }

  SUBCASE("non-finite symbol values are rejected") {
    const SpectralField f = cosine(grid, 1);
    const FourierSymbol bad{[](const std::array<int, 2>& k) {
                              return std::complex<double>(
                                  k[0] == 1 ? std::numeric_limits<double>::infinity() : 1.0, 0.0);
                            },
                            "bad"};
    CHECK_THROWS_AS(apply_multiplier(f, bad), std::runtime_error);
  }
}

TEST_CASE("fractional laplacian eigenrelations") {
  const PeriodicGrid grid = make_grid(1, 64);

  SUBCASE("constants are annihilated") {
    const SpectralField one = SpectralField::constant(grid, 3.5);
    CHECK(fractional_laplacian(one, 0.5).sup_norm() < 1e-14);
  }

  SUBCASE("cos(2 pi x), s = 1/2: eigenvalue 2 pi") {
    const SpectralField f = cosine(grid, 1);
    const SpectralField out = fractional_laplacian(f, 0.5);
    CHECK(max_abs_diff(out, kTwoPi * f) < 1e-12 * kTwoPi);
  }

  SUBCASE("sin(4 pi x), s = 0.75 against the direct DFT oracle") {
    const SpectralField f = sine(grid, 2);
    const SpectralField out = fractional_laplacian(f, 0.75);
    // Oracle: scale the slow-DFT coefficients of the two-mode signal.
    const auto c_plus = slow_dft_coeff_1d(f.values(), 2);
    const auto c_minus = slow_dft_coeff_1d(f.values(), -2);
    const double eig = std::pow(kTwoPi * 2.0, 1.5);
    for (int j = 0; j < grid.n; ++j) {
      const double arg = kTwoPi * 2.0 * j / grid.n;
      const std::complex<double> expected =
          eig * (c_plus * std::complex<double>(std::cos(arg), std::sin(arg)) +
                 c_minus * std::complex<double>(std::cos(arg), -std::sin(arg)));
      CHECK(out.values()[j] == doctest::Approx(expected.real()).epsilon(1e-10));
    }
    const double analytic = std::pow(4.0 * std::numbers::pi, 1.5);
    CHECK(max_abs_diff(out, analytic * f) < 1e-12 * analytic);
  }

  SUBCASE("order outside (0,1) rejected") {
    const SpectralField f = cosine(grid, 1);
    CHECK_THROWS_AS(fractional_laplacian(f, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(fractional_laplacian(f, 1.0), std::invalid_argument);
  }

  SUBCASE("s -> 1 limit approaches -Laplacian mode-wise") {
    std::mt19937_64 rng(3);
    const SpectralField f = random_band_limited(grid, rng);
    const SpectralField target = -1.0 * laplacian(f);
    double prev = std::numeric_limits<double>::infinity();
    for (double s : {0.9, 0.99, 0.999}) {
      const double gap = max_abs_diff(fractional_laplacian(f, s), target);
      CHECK(gap < prev);
      prev = gap;
    }
    CHECK(prev < 0.01 * target.sup_norm());
  }

  SUBCASE("zero mean to machine precision") {
    std::mt19937_64 rng(5);
    const SpectralField f = random_band_limited(grid, rng);
    CHECK(std::abs(fractional_laplacian(f, 0.3).mean()) < 1e-15);
  }
}

TEST_CASE("gradient and divergence") {
  SUBCASE("gradient of a constant vanishes") {
    const PeriodicGrid grid = make_grid(2, 16);
    const VectorField g = gradient(SpectralField::constant(grid, 2.0));
    CHECK(g.sup_norm() < 1e-14);
  }

  SUBCASE("gradient of sin(2 pi x1) in 2d") {
    const PeriodicGrid grid = make_grid(2, 32);
    const VectorField g = gradient(sine(grid, 1));
    CHECK(max_abs_diff(g.comps[0], cosine(grid, 1, kTwoPi)) < 1e-11);
    CHECK(g.comps[1].sup_norm() < 1e-11);
  }

  SUBCASE("div(grad f) matches the -(2 pi |k|)^2 multiplier") {
    for (const auto& grid : {make_grid(1, 64), make_grid(2, 32)}) {
      std::mt19937_64 rng(17);
      const SpectralField f = random_band_limited(grid, rng);
      const SpectralField via_ops = divergence(gradient(f));
      const SpectralField via_multiplier = laplacian(f);
      CHECK(max_abs_diff(via_ops, via_multiplier) < 1e-12 * via_multiplier.sup_norm());
    }
  }

  SUBCASE("divergence has exactly zero mean") {
    const PeriodicGrid grid = make_grid(2, 16);
    std::mt19937_64 rng(23);
    VectorField v;
    v.comps.push_back(random_band_limited(grid, rng));
    v.comps.push_back(random_band_limited(grid, rng));
    CHECK(divergence(v).coeffs()[0] == std::complex<double>(0.0, 0.0));
  }

  SUBCASE("mismatched grids rejected") {
    VectorField v;
    v.comps.push_back(SpectralField::constant(make_grid(2, 16), 1.0));
    v.comps.push_back(SpectralField::constant(make_grid(2, 32), 1.0));
    CHECK_THROWS_AS(divergence(v), std::invalid_argument);
  }
}

TEST_CASE("dealiasing by the two-thirds rule") {
  const PeriodicGrid grid = make_grid(1, 64);  // cutoff 21

  SUBCASE("band-limited field below the cutoff unchanged") {
    // Exactly band-limited: built from coefficients, mode n/4.
    std::vector<std::complex<double>> coeffs(grid.size());
    coeffs[16] = coeffs[mode_index(-16, grid.n)] = 0.5;
    const SpectralField f = SpectralField::from_coeffs(grid, std::move(coeffs));
    CHECK(max_abs_diff(dealias(f), f) == 0.0);
    // Sampled fields carry rounding-level energy in every mode.
    CHECK(max_abs_diff(dealias(cosine(grid, 16)), cosine(grid, 16)) < 1e-13);
  }

  SUBCASE("mode n/2 - 1 is removed") {
    const SpectralField f = cosine(grid, 31);
    CHECK(dealias(f).sup_norm() < 1e-13);
  }

  SUBCASE("idempotent") {
    std::mt19937_64 rng(29);
    std::normal_distribution<double> gauss;
    std::vector<double> values(grid.size());
    for (auto& v : values) v = gauss(rng);
    const SpectralField f(grid, values);
    const SpectralField once = dealias(f);
    const SpectralField twice = dealias(once);
    CHECK(max_abs_diff(once, twice) == 0.0);
  }
}

TEST_CASE("second-difference hessian monitor") {
  SUBCASE("cos(2 pi x): maximum curvature 4 pi^2 within O(h^2)") {
    const PeriodicGrid grid = make_grid(1, 64);
    const double got = semiconcavity_bound(cosine(grid, 1));
    const double expected = 4.0 * std::numbers::pi * std::numbers::pi;
    CHECK(got == doctest::Approx(expected).epsilon(5e-3));
  }

  SUBCASE("constant field has zero curvature") {
    const PeriodicGrid grid = make_grid(2, 16);
    const auto maxima = second_difference_hessian_bound(SpectralField::constant(grid, 1.0));
    CHECK(maxima.size() == 4);  // axes and both diagonals
    for (double m : maxima) CHECK(std::abs(m) < 1e-13);
  }

  SUBCASE("smooth periodized bump against the analytic curvature oracle") {
    const PeriodicGrid grid = make_grid(1, 128);
    auto f = [](double x) { return std::exp(std::cos(kTwoPi * x)); };
    const SpectralField field =
        SpectralField::sample(grid, [&](const std::array<double, 2>& x) { return f(x[0]); });
    // Oracle: max of the analytic second derivative over a dense sample.
    double oracle = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 20000; ++i) {
      const double x = i / 20000.0;
      const double c = std::cos(kTwoPi * x), s = std::sin(kTwoPi * x);
      oracle = std::max(oracle, kTwoPi * kTwoPi * std::exp(c) * (s * s - c));
    }
    CHECK(semiconcavity_bound(field) == doctest::Approx(oracle).epsilon(2e-3));
  }
}

TEST_CASE("integration-by-parts identity") {
  for (const auto& grid : {make_grid(1, 64), make_grid(2, 32)}) {
    std::mt19937_64 rng(31);
    for (double s : {0.25, 0.5, 0.75}) {
      const SpectralField f = random_band_limited(grid, rng);
      const SpectralField g = random_band_limited(grid, rng);
      const double lhs = inner_product(fractional_laplacian(f, s), g);
      const double rhs = inner_product(fractional_laplacian(f, s / 2.0),
                                       fractional_laplacian(g, s / 2.0));
      const double scale = lp_norm(f, 2.0) * lp_norm(g, 2.0);
      CHECK(std::abs(lhs - rhs) < 1e-10 * scale);
    }
  }
}

TEST_CASE("hermitian symmetry is preserved by real symbols") {
  const PeriodicGrid grid = make_grid(2, 16);
  std::mt19937_64 rng(37);
  std::normal_distribution<double> gauss;
  std::vector<double> values(grid.size());
  for (auto& v : values) v = gauss(rng);
  const SpectralField f = apply_multiplier(SpectralField(grid, values), symbols::bessel(1.3));

  const int n = grid.n;
  double worst = 0.0;
  for (int k0 = -n / 2 + 1; k0 < n / 2; ++k0)
    for (int k1 = -n / 2 + 1; k1 < n / 2; ++k1) {
      const auto a = f.coeff(k0, k1);
      const auto b = std::conj(f.coeff(-k0, -k1));
      worst = std::max(worst, std::abs(a - b));
    }
  CHECK(worst < 1e-13 * f.sup_norm());
}
