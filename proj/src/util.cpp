#include "fmfg/util.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fmfg {

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("need >= 2 points to fit");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw std::invalid_argument("log-log fit requires positive data");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double trapezoid(std::span<const double> values, double dt) {
  if (values.size() < 2) return 0.0;
  double acc = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) acc += values[i];
  return acc * dt;
}

std::vector<double> geometric_times(double t0, double t1, int count) {
  if (count < 2 || !(t0 > 0.0) || !(t1 > t0))
    throw std::invalid_argument("geometric ladder needs 0 < t0 < t1 and count >= 2");
  std::vector<double> out(count);
  const double ratio = std::pow(t1 / t0, 1.0 / (count - 1));
  double t = t0;
  for (int i = 0; i < count; ++i, t *= ratio) out[i] = t;
  out.back() = t1;
  return out;
}

std::string fnv1a_hex(std::span<const char> bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace fmfg
