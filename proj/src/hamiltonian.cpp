#include "fmfg/hamiltonian.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "fmfg/spectral_ops.hpp"

namespace fmfg {

namespace {
double norm_sq(const std::array<double, 2>& p, int dim) {
  double s = p[0] * p[0];
  if (dim == 2) s += p[1] * p[1];
  return s;
}
}  // namespace

Hamiltonian::Hamiltonian(double gamma, SpectralField c_field)
    : gamma_(gamma), c_(std::move(c_field)) {
  if (!(gamma > 1.0 && gamma <= 2.0)) throw std::invalid_argument("gamma must lie in (1,2]");
  c_min_ = c_.min_value();
  // c == 0 (H == 0) is admitted as the degenerate linear case; configs keep
  // the strict positivity of the standing assumptions.
  if (!(c_min_ >= 0.0)) throw std::invalid_argument("c(x) must be nonnegative");
  c_grad_ = gradient(c_);
  const int d = c_.grid().dim;
  if (d == 1) {
    c_hess_.push_back(laplacian(c_));
  } else {
    const VectorField g = c_grad_;
    c_hess_.push_back(gradient(g.comps[0]).comps[0]);  // xx
    c_hess_.push_back(gradient(g.comps[0]).comps[1]);  // xy
    c_hess_.push_back(gradient(g.comps[1]).comps[1]);  // yy
  }
}

double Hamiltonian::value_at(double c, const std::array<double, 2>& p, int dim) const {
  const double q = 1.0 + norm_sq(p, dim);
  return c * (std::pow(q, 0.5 * gamma_) - 1.0);
}

std::array<double, 2> Hamiltonian::grad_p_at(double c, const std::array<double, 2>& p,
                                             int dim) const {
  const double q = 1.0 + norm_sq(p, dim);
  const double factor = c * gamma_ * std::pow(q, 0.5 * gamma_ - 1.0);
  return {factor * p[0], dim == 2 ? factor * p[1] : 0.0};
}

double Hamiltonian::hess_pp_quadform(double c, const std::array<double, 2>& p,
                                     const std::array<double, 2>& xi, int dim) const {
  const double q = 1.0 + norm_sq(p, dim);
  const double dot = p[0] * xi[0] + (dim == 2 ? p[1] * xi[1] : 0.0);
  return c * gamma_ *
         (std::pow(q, 0.5 * gamma_ - 1.0) * norm_sq(xi, dim) +
          (gamma_ - 2.0) * std::pow(q, 0.5 * gamma_ - 2.0) * dot * dot);
}

SpectralField Hamiltonian::value(const VectorField& p) const {
  const auto& grid = c_.grid();
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::array<double, 2> pv{p.comps[0].values()[i],
                             grid.dim == 2 ? p.comps[1].values()[i] : 0.0};
    out[i] = value_at(c_.values()[i], pv, grid.dim);
  }
  return SpectralField(grid, std::move(out));
}

VectorField Hamiltonian::grad_p(const VectorField& p) const {
  const auto& grid = c_.grid();
  std::vector<std::vector<double>> out(grid.dim, std::vector<double>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::array<double, 2> pv{p.comps[0].values()[i],
                             grid.dim == 2 ? p.comps[1].values()[i] : 0.0};
    const auto g = grad_p_at(c_.values()[i], pv, grid.dim);
    for (int j = 0; j < grid.dim; ++j) out[j][i] = g[j];
  }
  VectorField v;
  for (int j = 0; j < grid.dim; ++j) v.comps.emplace_back(grid, std::move(out[j]));
  return v;
}

std::vector<SpectralField> Hamiltonian::hess_pp(const VectorField& p) const {
  const auto& grid = c_.grid();
  const int d = grid.dim;
  // D^2_pp H = c gamma [q^{gamma/2-1} I + (gamma-2) q^{gamma/2-2} p (x) p].
  const int n_comp = d == 1 ? 1 : 3;
  std::vector<std::vector<double>> out(n_comp, std::vector<double>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double c = c_.values()[i];
    const double p0 = p.comps[0].values()[i];
    const double p1 = d == 2 ? p.comps[1].values()[i] : 0.0;
    const double q = 1.0 + p0 * p0 + p1 * p1;
    const double iso = c * gamma_ * std::pow(q, 0.5 * gamma_ - 1.0);
    const double aniso = c * gamma_ * (gamma_ - 2.0) * std::pow(q, 0.5 * gamma_ - 2.0);
    out[0][i] = iso + aniso * p0 * p0;
    if (d == 2) {
      out[1][i] = aniso * p0 * p1;
      out[2][i] = iso + aniso * p1 * p1;
    }
  }
  std::vector<SpectralField> fields;
  fields.reserve(n_comp);
  for (auto& comp : out) fields.emplace_back(grid, std::move(comp));
  return fields;
}

double Hamiltonian::hess_xx_norm_at(std::size_t node, const std::array<double, 2>& p,
                                    int dim) const {
  const double q = 1.0 + norm_sq(p, dim);
  const double shape = std::pow(q, 0.5 * gamma_) - 1.0;
  double frob = 0.0;
  if (dim == 1) {
    frob = std::abs(c_hess_[0].values()[node]);
  } else {
    const double xx = c_hess_[0].values()[node];
    const double xy = c_hess_[1].values()[node];
    const double yy = c_hess_[2].values()[node];
    frob = std::sqrt(xx * xx + 2.0 * xy * xy + yy * yy);
  }
  return frob * shape;
}

double Hamiltonian::hess_px_norm_at(std::size_t node, const std::array<double, 2>& p,
                                    int dim) const {
  const double q = 1.0 + norm_sq(p, dim);
  const double factor = gamma_ * std::pow(q, 0.5 * gamma_ - 1.0);
  double dc_sq = 0.0;
  for (const auto& comp : c_grad_.comps) {
    const double g = comp.values()[node];
    dc_sq += g * g;
  }
  return std::sqrt(dc_sq) * factor * std::sqrt(norm_sq(p, dim));
}

InequalityReport verify_hamiltonian_assumptions(const Hamiltonian& ham, std::uint64_t seed,
                                                int samples, double p_cap) {
  const auto& grid = ham.c().grid();
  const int dim = grid.dim;
  const double gamma = ham.gamma();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> node_pick(0, grid.size() - 1);

  auto random_vec = [&](double cap) {
    const double r = cap * unif(rng);
    const double phi = 2.0 * std::numbers::pi * unif(rng);
    return std::array<double, 2>{r * std::cos(phi), dim == 2 ? r * std::sin(phi) : 0.0};
  };

  double h1_c_coerc = std::numeric_limits<double>::infinity();
  double h5_c_coerc = std::numeric_limits<double>::infinity();
  double h2_c = 0.0, h3_c = 0.0, h4_c = 0.0;
  struct Probe {
    double pnorm, h1_lhs, h5_lhs, xi_sq, p_pow_h5;
  };
  std::vector<Probe> probes;
  probes.reserve(samples);

  for (int i = 0; i < samples; ++i) {
    const std::size_t node = node_pick(rng);
    const double c = ham.c().values()[node];
    const auto p = random_vec(p_cap);
    const auto q = random_vec(p_cap);
    auto xi = random_vec(1.0);
    const double xin = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1]);
    if (xin > 1e-12) {
      xi[0] /= xin;
      xi[1] /= xin;
    } else {
      xi = {1.0, 0.0};
    }

    const double pn = std::sqrt(p[0] * p[0] + p[1] * p[1]);
    const auto dp = ham.grad_p_at(c, p, dim);
    const double h1_lhs = dp[0] * p[0] + dp[1] * p[1] - ham.value_at(c, p, dim);
    const double h5_lhs = ham.hess_pp_quadform(c, p, xi, dim);
    probes.push_back({pn, h1_lhs, h5_lhs, 1.0, std::pow(std::max(pn, 1e-8), gamma - 2.0)});

    if (pn >= 1.0) {
      h1_c_coerc = std::min(h1_c_coerc, h1_lhs / std::pow(pn, gamma));
      h5_c_coerc = std::min(h5_c_coerc, h5_lhs / std::pow(pn, gamma - 2.0));
    }
    const double qn = std::sqrt(q[0] * q[0] + q[1] * q[1]);
    double dpq = 0.0;
    for (int j = 0; j < dim; ++j) dpq += (p[j] - q[j]) * (p[j] - q[j]);
    dpq = std::sqrt(dpq);
    if (dpq > 1e-10) {
      const double num = std::abs(ham.value_at(c, p, dim) - ham.value_at(c, q, dim));
      h2_c = std::max(h2_c, num / ((std::pow(pn, gamma - 1.0) + std::pow(qn, gamma - 1.0) + 1e-30) * dpq));
    }
    h3_c = std::max(h3_c, ham.hess_xx_norm_at(node, p, dim) / (std::pow(pn, gamma) + 1.0));
    h4_c = std::max(h4_c, ham.hess_px_norm_at(node, p, dim) / (std::pow(pn, gamma - 1.0) + 1.0));
  }

  if (!std::isfinite(h1_c_coerc)) h1_c_coerc = 0.0;
  if (!std::isfinite(h5_c_coerc)) h5_c_coerc = 0.0;
  // Smallest offsets closing (H1)/(H5) on the whole sample, small |p| included.
  double h1_offset = 0.0, h5_offset = 0.0;
  for (const auto& pr : probes) {
    h1_offset = std::max(h1_offset, h1_c_coerc * std::pow(pr.pnorm, gamma) - pr.h1_lhs);
    h5_offset = std::max(h5_offset, h5_c_coerc * pr.p_pow_h5 - pr.h5_lhs);
  }

  InequalityReport rep;
  rep.name = "hamiltonian_assumptions";
  rep.samples = samples;
  rep.seed = seed;
  rep.worst_ratio = std::max({h2_c, h3_c, h4_c});
  rep.pass = h1_c_coerc > 0.0 && h5_c_coerc > 0.0 && std::isfinite(rep.worst_ratio) &&
             std::isfinite(h1_offset) && std::isfinite(h5_offset);
  rep.config = {{"gamma", gamma}, {"p_cap", p_cap}};
  rep.details = {{"H1_C", h1_c_coerc}, {"H1_c", h1_offset},   {"H2_C", h2_c},
                 {"H3_C", h3_c},       {"H4_C", h4_c},        {"H5_C", h5_c_coerc},
                 {"H5_offset", h5_offset}};
  return rep;
}

}  // namespace fmfg
