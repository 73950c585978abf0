#include <fftw3.h>

#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "fmfg/field.hpp"

namespace fmfg::detail {
namespace {

// Plans are cached per (dim, n, sign). FFTW_ESTIMATE keeps planning
// deterministic; FFTW_UNALIGNED lets us execute on std::vector storage.
// fftw_execute_dft on fresh buffers is thread-safe; creation is not.
class PlanCache {
 public:
  fftw_plan get(int dim, int n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto key = std::tuple{dim, n, sign};
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    const std::size_t total = dim == 1 ? static_cast<std::size_t>(n)
                                       : static_cast<std::size_t>(n) * n;
    std::vector<std::complex<double>> in(total), out(total);
    auto* fin = reinterpret_cast<fftw_complex*>(in.data());
    auto* fout = reinterpret_cast<fftw_complex*>(out.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = dim == 1 ? fftw_plan_dft_1d(n, fin, fout, sign, flags)
                              : fftw_plan_dft_2d(n, n, fin, fout, sign, flags);
    if (!plan) throw std::runtime_error("fftw plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void dft_forward(const PeriodicGrid& grid, const std::vector<double>& values,
                 std::vector<std::complex<double>>& coeffs) {
  const std::size_t total = grid.size();
  std::vector<std::complex<double>> in(total);
  for (std::size_t i = 0; i < total; ++i) in[i] = values[i];
  coeffs.assign(total, std::complex<double>(0.0, 0.0));
  fftw_plan plan = cache().get(grid.dim, grid.n, FFTW_FORWARD);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(coeffs.data()));
  const double scale = 1.0 / static_cast<double>(total);
  for (auto& c : coeffs) c *= scale;
}

void dft_inverse(const PeriodicGrid& grid, const std::vector<std::complex<double>>& coeffs,
                 std::vector<double>& values) {
  const std::size_t total = grid.size();
  std::vector<std::complex<double>> in(coeffs), out(total);
  fftw_plan plan = cache().get(grid.dim, grid.n, FFTW_BACKWARD);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  values.resize(total);
  for (std::size_t i = 0; i < total; ++i) values[i] = out[i].real();
}

}  // namespace fmfg::detail
