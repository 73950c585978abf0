#include "fmfg/fmfg.h"

#include <cstring>
#include <string>

#include "fmfg/experiment.hpp"
#include "fmfg/field_io.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

template <class Fn>
fmfg_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return FMFG_ERR_INVALID_ARGUMENT;
  } catch (const std::runtime_error& e) {
    set_error(e.what());
    return FMFG_ERR_NUMERICAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return FMFG_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return FMFG_ERR_INTERNAL;
  }
}

}  // namespace

struct fmfg_problem {
  fmfg::LoadedProblem loaded;
};

struct fmfg_field {
  fmfg::LoadedField loaded;
};

struct fmfg_result {
  bool pass = false;
  std::string summary;
};

namespace {

fmfg_status finish_run(const fmfg::RunResult& run, fmfg_result** out) {
  *out = new fmfg_result{run.pass, run.summary.dump(2)};
  return FMFG_OK;
}

}  // namespace

extern "C" {

const char* fmfg_version(void) { return fmfg::kCodeVersion; }

const char* fmfg_last_error(void) { return g_last_error.c_str(); }

fmfg_status fmfg_problem_load(const char* config_path, fmfg_problem** out) {
  if (!config_path || !out) {
    set_error("null argument");
    return FMFG_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    *out = new fmfg_problem{fmfg::load_config(config_path)};
    return FMFG_OK;
  });
}

void fmfg_problem_free(fmfg_problem* problem) { delete problem; }

int fmfg_problem_dim(const fmfg_problem* p) { return p->loaded.problem.grid.dim; }
int fmfg_problem_points_per_dim(const fmfg_problem* p) { return p->loaded.problem.grid.n; }
double fmfg_problem_fractional_order(const fmfg_problem* p) { return p->loaded.problem.s; }
double fmfg_problem_viscosity(const fmfg_problem* p) { return p->loaded.problem.sigma; }
double fmfg_problem_horizon(const fmfg_problem* p) { return p->loaded.problem.horizon; }

fmfg_status fmfg_run_solve(const fmfg_problem* problem, const char* out_dir, uint64_t seed,
                           fmfg_result** out) {
  if (!problem || !out_dir || !out) {
    set_error("null argument");
    return FMFG_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] { return finish_run(fmfg::run_solve(problem->loaded, out_dir, seed), out); });
}

fmfg_status fmfg_run_sweep(const fmfg_problem* problem, const double* sigmas, int n_sigmas,
                           const char* out_dir, uint64_t seed, fmfg_result** out) {
  if (!problem || !sigmas || n_sigmas < 2 || !out_dir || !out) {
    set_error("null argument or ladder shorter than 2");
    return FMFG_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    std::vector<double> ladder(sigmas, sigmas + n_sigmas);
    return finish_run(fmfg::run_sweep(problem->loaded, std::move(ladder), out_dir, seed), out);
  });
}

fmfg_status fmfg_run_picard(const fmfg_problem* problem, const double* horizons, int n_horizons,
                            const char* out_dir, uint64_t seed, fmfg_result** out) {
  if (!problem || !horizons || n_horizons < 2 || !out_dir || !out) {
    set_error("null argument or ladder shorter than 2");
    return FMFG_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    std::vector<double> ladder(horizons, horizons + n_horizons);
    return finish_run(fmfg::run_picard(problem->loaded, std::move(ladder), out_dir, seed), out);
  });
}

fmfg_status fmfg_run_uniqueness(const fmfg_problem* problem, int n_inits, const char* out_dir,
                                uint64_t seed, fmfg_result** out) {
  if (!problem || n_inits < 2 || !out_dir || !out) {
    set_error("null argument or fewer than 2 inits");
    return FMFG_ERR_INVALID_ARGUMENT;
  }
  return guarded(
      [&] { return finish_run(fmfg::run_uniqueness(problem->loaded, n_inits, out_dir, seed), out); });
}

fmfg_status fmfg_run_verify(const fmfg_problem* problem, const char* suite, const char* out_dir,
                            uint64_t seed, fmfg_result** out) {
  if (!problem || !suite || !out_dir || !out) {
    set_error("null argument");
    return FMFG_ERR_INVALID_ARGUMENT;
  }
  return guarded(
      [&] { return finish_run(fmfg::run_verify(problem->loaded, suite, out_dir, seed), out); });
}

fmfg_status fmfg_run_semigroup(const fmfg_problem* problem, double nu, double gamma, double p,
                               const char* out_dir, uint64_t seed, fmfg_result** out) {
  if (!problem || !out_dir || !out) {
    set_error("null argument");
    return FMFG_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    return finish_run(fmfg::run_semigroup_decay(problem->loaded, nu, gamma, p, out_dir, seed),
                      out);
  });
}

int fmfg_result_pass(const fmfg_result* result) { return result->pass ? 1 : 0; }

const char* fmfg_result_summary_json(const fmfg_result* result) { return result->summary.c_str(); }

void fmfg_result_free(fmfg_result* result) { delete result; }

fmfg_status fmfg_field_load(const char* path, fmfg_field** out) {
  if (!path || !out) {
    set_error("null argument");
    return FMFG_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    *out = new fmfg_field{fmfg::load_field(path)};
    return FMFG_OK;
  });
}

fmfg_status fmfg_field_save(const fmfg_field* field, const char* path) {
  if (!field || !path) {
    set_error("null argument");
    return FMFG_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    fmfg::save_field(field->loaded.field, field->loaded.s, field->loaded.time, path);
    return FMFG_OK;
  });
}

void fmfg_field_free(fmfg_field* field) { delete field; }

int fmfg_field_dim(const fmfg_field* f) { return f->loaded.field.grid().dim; }
int fmfg_field_points_per_dim(const fmfg_field* f) { return f->loaded.field.grid().n; }
int64_t fmfg_field_size(const fmfg_field* f) {
  return static_cast<int64_t>(f->loaded.field.size());
}
double fmfg_field_time(const fmfg_field* f) { return f->loaded.time; }
double fmfg_field_fractional_order(const fmfg_field* f) { return f->loaded.s; }

fmfg_status fmfg_field_values(const fmfg_field* field, double* buffer, int64_t buffer_len) {
  if (!field || !buffer) {
    set_error("null argument");
    return FMFG_ERR_INVALID_ARGUMENT;
  }
  if (buffer_len < static_cast<int64_t>(field->loaded.field.size())) {
    set_error("buffer too small");
    return FMFG_ERR_INVALID_ARGUMENT;
  }
  std::memcpy(buffer, field->loaded.field.values().data(),
              field->loaded.field.size() * sizeof(double));
  return FMFG_OK;
}

}  // extern "C"
