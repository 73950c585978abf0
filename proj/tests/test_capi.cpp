#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "fmfg/fmfg.h"

namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("fmfg_capi_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const fs::path& dir) {
  const fs::path path = dir / "problem.toml";
  std::ofstream out(path);
  out << "d = 1\n"
         "n = 32\n"
         "s = 0.75\n"
         "T = 0.2\n"
         "Nt = 64\n"
         "gamma = 1.5\n"
         "coupling_mode = \"monotone\"\n"
         "[m0]\n"
         "type = \"cosine\"\n"
         "amplitude = 0.3\n"
         "[uT]\n"
         "type = \"cosine\"\n"
         "amplitude = 0.1\n";
  return path;
}

}  // namespace

TEST_CASE("version string is exposed") {
  CHECK(std::strlen(fmfg_version()) > 0);
}

TEST_CASE("problem lifecycle via the C surface") {
  const fs::path dir = temp_dir("problem");
  const fs::path config = write_config(dir);

  fmfg_problem* problem = nullptr;
  REQUIRE(fmfg_problem_load(config.string().c_str(), &problem) == FMFG_OK);
  CHECK(fmfg_problem_dim(problem) == 1);
  CHECK(fmfg_problem_points_per_dim(problem) == 32);
  CHECK(fmfg_problem_fractional_order(problem) == 0.75);
  CHECK(fmfg_problem_viscosity(problem) == 0.0);
  CHECK(fmfg_problem_horizon(problem) == 0.2);
  fmfg_problem_free(problem);
}

TEST_CASE("load failures set the thread-local error message") {
  fmfg_problem* problem = nullptr;
  CHECK(fmfg_problem_load("/nonexistent/nope.toml", &problem) == FMFG_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(fmfg_last_error()) > 0);
  CHECK(fmfg_problem_load(nullptr, &problem) == FMFG_ERR_INVALID_ARGUMENT);
}

TEST_CASE("solve through the C surface produces a passing result") {
  const fs::path dir = temp_dir("solve");
  const fs::path config = write_config(dir);

  fmfg_problem* problem = nullptr;
  REQUIRE(fmfg_problem_load(config.string().c_str(), &problem) == FMFG_OK);

  fmfg_result* result = nullptr;
  REQUIRE(fmfg_run_solve(problem, (dir / "out").string().c_str(), 3, &result) == FMFG_OK);
  CHECK(fmfg_result_pass(result) == 1);
  const std::string summary = fmfg_result_summary_json(result);
  CHECK(summary.find("\"converged\": true") != std::string::npos);
  CHECK(fs::exists(dir / "out" / "summary.json"));
  fmfg_result_free(result);

  SUBCASE("verify suite rejects unknown names") {
    fmfg_result* bad = nullptr;
    CHECK(fmfg_run_verify(problem, "nonsense", (dir / "bad").string().c_str(), 0, &bad) ==
          FMFG_ERR_INVALID_ARGUMENT);
    CHECK(std::string(fmfg_last_error()).find("suite") != std::string::npos);
  }

  fmfg_problem_free(problem);
}

TEST_CASE("field checkpoints through the C surface") {
  const fs::path dir = temp_dir("fields");
  const fs::path config = write_config(dir);

  // Produce a checkpoint by running a solve.
  fmfg_problem* problem = nullptr;
  REQUIRE(fmfg_problem_load(config.string().c_str(), &problem) == FMFG_OK);
  fmfg_result* result = nullptr;
  REQUIRE(fmfg_run_solve(problem, (dir / "out").string().c_str(), 0, &result) == FMFG_OK);
  fmfg_result_free(result);
  fmfg_problem_free(problem);

  fmfg_field* field = nullptr;
  REQUIRE(fmfg_field_load((dir / "out" / "m_00000.fmfg").string().c_str(), &field) == FMFG_OK);
  CHECK(fmfg_field_dim(field) == 1);
  CHECK(fmfg_field_points_per_dim(field) == 32);
  CHECK(fmfg_field_size(field) == 32);
  CHECK(fmfg_field_time(field) == 0.0);
  CHECK(fmfg_field_fractional_order(field) == 0.75);

  std::vector<double> buffer(32);
  REQUIRE(fmfg_field_values(field, buffer.data(), 32) == FMFG_OK);
  double mean = 0.0;
  for (double v : buffer) mean += v;
  CHECK(mean / 32.0 == doctest::Approx(1.0).epsilon(1e-12));

  SUBCASE("undersized buffers are rejected") {
    CHECK(fmfg_field_values(field, buffer.data(), 8) == FMFG_ERR_INVALID_ARGUMENT);
  }

  SUBCASE("save and reload") {
    const fs::path copy = dir / "copy.fmfg";
    REQUIRE(fmfg_field_save(field, copy.string().c_str()) == FMFG_OK);
    fmfg_field* reloaded = nullptr;
    REQUIRE(fmfg_field_load(copy.string().c_str(), &reloaded) == FMFG_OK);
    std::vector<double> again(32);
    REQUIRE(fmfg_field_values(reloaded, again.data(), 32) == FMFG_OK);
    for (int i = 0; i < 32; ++i) CHECK(again[i] == buffer[i]);
    fmfg_field_free(reloaded);
  }

  fmfg_field_free(field);

  SUBCASE("loading a missing checkpoint fails cleanly") {
    fmfg_field* missing = nullptr;
    CHECK(fmfg_field_load((dir / "absent.fmfg").string().c_str(), &missing) != FMFG_OK);
  }
}
