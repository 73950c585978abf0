#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fmfg {

/// Least-squares slope of log(y) against log(x). Requires positive entries.
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

/// Trapezoid rule on a uniform grid with spacing dt.
double trapezoid(std::span<const double> values, double dt);

/// Geometric ladder of `count` points from t0 to t1 inclusive.
std::vector<double> geometric_times(double t0, double t1, int count);

/// FNV-1a hash of a byte string, hex-encoded. Used to fingerprint configs.
std::string fnv1a_hex(std::span<const char> bytes);

}  // namespace fmfg
