/* C interface to the fractional mean field game solver library.
 *
 * All functions return FMFG_OK (0) on success; on failure a nonzero status
 * is returned and fmfg_last_error() yields a thread-local message describing
 * what went wrong. Handles are opaque and must be released with the matching
 * _free function. */

#ifndef FMFG_H
#define FMFG_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fmfg_status {
  FMFG_OK = 0,
  FMFG_ERR_INVALID_ARGUMENT = 1,
  FMFG_ERR_IO = 2,
  FMFG_ERR_NUMERICAL = 3,
  FMFG_ERR_INTERNAL = 4
} fmfg_status;

typedef struct fmfg_problem fmfg_problem;
typedef struct fmfg_field fmfg_field;
typedef struct fmfg_result fmfg_result;

const char* fmfg_version(void);

/* Thread-local message for the most recent failing call on this thread. */
const char* fmfg_last_error(void);

/* --- problem handling ----------------------------------------------- */

fmfg_status fmfg_problem_load(const char* config_path, fmfg_problem** out);
void fmfg_problem_free(fmfg_problem* problem);

int fmfg_problem_dim(const fmfg_problem* problem);
int fmfg_problem_points_per_dim(const fmfg_problem* problem);
double fmfg_problem_fractional_order(const fmfg_problem* problem);
double fmfg_problem_viscosity(const fmfg_problem* problem);
double fmfg_problem_horizon(const fmfg_problem* problem);

/* --- experiment drivers ---------------------------------------------- */
/* Each writes its artifacts (manifest.json, CSV tables, summary.json and
 * per-report JSON) under out_dir and returns a result handle. */

fmfg_status fmfg_run_solve(const fmfg_problem* problem, const char* out_dir, uint64_t seed,
                           fmfg_result** out);
fmfg_status fmfg_run_sweep(const fmfg_problem* problem, const double* sigmas, int n_sigmas,
                           const char* out_dir, uint64_t seed, fmfg_result** out);
fmfg_status fmfg_run_picard(const fmfg_problem* problem, const double* horizons, int n_horizons,
                            const char* out_dir, uint64_t seed, fmfg_result** out);
fmfg_status fmfg_run_uniqueness(const fmfg_problem* problem, int n_inits, const char* out_dir,
                                uint64_t seed, fmfg_result** out);
fmfg_status fmfg_run_verify(const fmfg_problem* problem, const char* suite, const char* out_dir,
                            uint64_t seed, fmfg_result** out);
fmfg_status fmfg_run_semigroup(const fmfg_problem* problem, double nu, double gamma, double p,
                               const char* out_dir, uint64_t seed, fmfg_result** out);

/* 1 when every pass flag of the run is true. */
int fmfg_result_pass(const fmfg_result* result);
/* Serialized JSON summary; owned by the result handle. */
const char* fmfg_result_summary_json(const fmfg_result* result);
void fmfg_result_free(fmfg_result* result);

/* --- field checkpoints ------------------------------------------------ */

fmfg_status fmfg_field_load(const char* path, fmfg_field** out);
fmfg_status fmfg_field_save(const fmfg_field* field, const char* path);
void fmfg_field_free(fmfg_field* field);

int fmfg_field_dim(const fmfg_field* field);
int fmfg_field_points_per_dim(const fmfg_field* field);
int64_t fmfg_field_size(const fmfg_field* field);
double fmfg_field_time(const fmfg_field* field);
double fmfg_field_fractional_order(const fmfg_field* field);
/* Copies all n^d samples into buffer (row-major); fails when buffer_len is
 * too small. */
fmfg_status fmfg_field_values(const fmfg_field* field, double* buffer, int64_t buffer_len);

#ifdef __cplusplus
}
#endif

#endif /* FMFG_H */
