// Command-line driver for the fmfg shared library. Talks to the solver
// exclusively through the C API in fmfg/fmfg.h.
//
// Exit codes: 0 all pass flags true, 1 failed pass flags, 2 usage or input
// errors.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fmfg/fmfg.h"

namespace {

struct ProblemDeleter {
  void operator()(fmfg_problem* p) const { fmfg_problem_free(p); }
};
struct ResultDeleter {
  void operator()(fmfg_result* r) const { fmfg_result_free(r); }
};

using ProblemPtr = std::unique_ptr<fmfg_problem, ProblemDeleter>;
using ResultPtr = std::unique_ptr<fmfg_result, ResultDeleter>;

ProblemPtr load_problem(const std::string& config_path, int& exit_code) {
  fmfg_problem* raw = nullptr;
  if (fmfg_problem_load(config_path.c_str(), &raw) != FMFG_OK) {
    std::fprintf(stderr, "error: %s\n", fmfg_last_error());
    exit_code = 2;
    return nullptr;
  }
  exit_code = 0;
  return ProblemPtr(raw);
}

int report(fmfg_status status, fmfg_result* raw) {
  if (status != FMFG_OK) {
    std::fprintf(stderr, "error: %s\n", fmfg_last_error());
    return 2;
  }
  ResultPtr result(raw);
  std::printf("%s\n", fmfg_result_summary_json(result.get()));
  return fmfg_result_pass(result.get()) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fmfg - pseudo-spectral fractional mean field game solver"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("config", config_path, "problem configuration file")->required();
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--seed", seed, "seed recorded in every artifact");
  };

  auto* solve = app.add_subcommand("solve", "damped fixed-point solve of the coupled system");
  add_common(solve);

  auto* sweep = app.add_subcommand("sweep", "vanishing-viscosity ladder");
  add_common(sweep);
  std::vector<double> sigmas{1e-1, 3e-2, 1e-2, 3e-3, 0.0};
  sweep->add_option("--sigmas", sigmas, "descending viscosity ladder ending at 0")
      ->delimiter(',');

  auto* picard = app.add_subcommand("picard", "short-time contraction measurement");
  add_common(picard);
  std::vector<double> horizons{0.05, 0.1, 0.2, 0.4};
  picard->add_option("--horizons", horizons, "ascending horizon ladder")->delimiter(',');

  auto* uniq = app.add_subcommand("uniqueness", "fixed point from several initializations");
  add_common(uniq);
  int inits = 2;
  uniq->add_option("--inits", inits, "number of initial guesses");

  auto* verify = app.add_subcommand("verify", "run an inequality verifier suite");
  add_common(verify);
  std::string suite = "spaces";
  verify->add_option("--suite", suite, "spaces|hamiltonian|coupling|semigroup");

  auto* semi = app.add_subcommand("semigroup", "decay-rate measurement for the heat semigroup");
  add_common(semi);
  std::vector<double> decay{0.0, 1.0, 2.0};
  semi->add_option("--decay", decay, "nu gamma p")->expected(3);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  int exit_code = 0;
  ProblemPtr problem = load_problem(config_path, exit_code);
  if (!problem) return exit_code;

  fmfg_result* result = nullptr;
  fmfg_status status = FMFG_ERR_INTERNAL;
  if (solve->parsed()) {
    status = fmfg_run_solve(problem.get(), out_dir.c_str(), seed, &result);
  } else if (sweep->parsed()) {
    status = fmfg_run_sweep(problem.get(), sigmas.data(), static_cast<int>(sigmas.size()),
                            out_dir.c_str(), seed, &result);
  } else if (picard->parsed()) {
    status = fmfg_run_picard(problem.get(), horizons.data(), static_cast<int>(horizons.size()),
                             out_dir.c_str(), seed, &result);
  } else if (uniq->parsed()) {
    status = fmfg_run_uniqueness(problem.get(), inits, out_dir.c_str(), seed, &result);
  } else if (verify->parsed()) {
    status = fmfg_run_verify(problem.get(), suite.c_str(), out_dir.c_str(), seed, &result);
  } else if (semi->parsed()) {
    status = fmfg_run_semigroup(problem.get(), decay[0], decay[1], decay[2], out_dir.c_str(),
                                seed, &result);
  } else {
    return 2;
  }
  return report(status, result);
}
