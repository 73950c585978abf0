#include "fmfg/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fmfg {

PeriodicGrid make_grid(int dim, int n) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("grid dimension must be 1 or 2");
  if (n % 2 != 0) throw std::invalid_argument("n must be even");
  if (n < 8) throw std::invalid_argument("n must be >= 8");
  return PeriodicGrid{dim, n};
}

SpectralField::SpectralField(const PeriodicGrid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid.size())
    throw std::invalid_argument("value array does not match grid size");
  detail::dft_forward(grid_, values_, coeffs_);
}

SpectralField SpectralField::from_coeffs(const PeriodicGrid& grid,
                                         std::vector<std::complex<double>> coeffs) {
  if (coeffs.size() != grid.size())
    throw std::invalid_argument("coefficient array does not match grid size");
  SpectralField f;
  f.grid_ = grid;
  f.coeffs_ = std::move(coeffs);
  detail::dft_inverse(grid, f.coeffs_, f.values_);
  return f;
}

SpectralField SpectralField::constant(const PeriodicGrid& grid, double value) {
  SpectralField f;
  f.grid_ = grid;
  f.values_.assign(grid.size(), value);
  f.coeffs_.assign(grid.size(), std::complex<double>(0.0, 0.0));
  f.coeffs_[0] = value;
  return f;
}

SpectralField SpectralField::from_parts(const PeriodicGrid& grid, std::vector<double> values,
                                        std::vector<std::complex<double>> coeffs) {
  SpectralField f;
  f.grid_ = grid;
  f.values_ = std::move(values);
  f.coeffs_ = std::move(coeffs);
  return f;
}

std::complex<double> SpectralField::coeff(int k0, int k1) const {
  const int n = grid_.n;
  const std::size_t idx = grid_.dim == 1
                              ? static_cast<std::size_t>(mode_index(k0, n))
                              : grid_.flatten(mode_index(k0, n), mode_index(k1, n));
  return coeffs_[idx];
}

double SpectralField::min_value() const {
  return *std::min_element(values_.begin(), values_.end());
}

double SpectralField::max_value() const {
  return *std::max_element(values_.begin(), values_.end());
}

double SpectralField::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  if (!(grid_ == other.grid_)) throw std::invalid_argument("grid mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  if (!(grid_ == other.grid_)) throw std::invalid_argument("grid mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double a) {
  for (auto& v : values_) v *= a;
  for (auto& c : coeffs_) c *= a;
  return *this;
}

SpectralField multiply(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("grid mismatch");
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values()[i] * b.values()[i];
  return SpectralField(a.grid(), std::move(v));
}

double VectorField::sup_norm() const {
  const std::size_t total = comps.front().size();
  double m = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    double sq = 0.0;
    for (const auto& c : comps) sq += c.values()[i] * c.values()[i];
    m = std::max(m, sq);
  }
  return std::sqrt(m);
}

}  // namespace fmfg
