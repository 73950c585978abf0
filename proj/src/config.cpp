#include "fmfg/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fmfg/spectral_ops.hpp"
#include "fmfg/util.hpp"

namespace fmfg {

namespace {

struct Entry {
  std::string raw;
  int line = 0;
};

using Section = std::map<std::string, Entry>;
using Tree = std::map<std::string, Section>;

[[noreturn]] void fail(const std::string& name, int line, const std::string& message) {
  throw std::invalid_argument(name + ":" + std::to_string(line) + ": " + message);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

Tree parse_tree(const std::string& text, const std::string& name) {
  Tree tree;
  std::string section;  // "" = top level
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(name, lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) fail(name, lineno, "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(name, lineno, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) fail(name, lineno, "expected 'key = value'");
    tree[section][key] = Entry{value, lineno};
  }
  return tree;
}

class Reader {
 public:
  Reader(const Tree& tree, std::string name) : tree_(tree), name_(std::move(name)) {}

  bool has(const std::string& section, const std::string& key) const {
    const auto s = tree_.find(section);
    return s != tree_.end() && s->second.count(key) > 0;
  }

  const Entry& entry(const std::string& section, const std::string& key) const {
    const auto s = tree_.find(section);
    if (s == tree_.end() || !s->second.count(key))
      throw std::invalid_argument(name_ + ": missing required key '" +
                                  (section.empty() ? key : section + "." + key) + "'");
    return s->second.at(key);
  }

  double number(const std::string& section, const std::string& key) const {
    const Entry& e = entry(section, key);
    try {
      std::size_t pos = 0;
      const double v = std::stod(e.raw, &pos);
      if (pos != e.raw.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      fail(name_, e.line, "expected a number for '" + key + "', got '" + e.raw + "'");
    }
  }

  double number_or(const std::string& section, const std::string& key, double fallback) const {
    return has(section, key) ? number(section, key) : fallback;
  }

  int integer(const std::string& section, const std::string& key) const {
    const double v = number(section, key);
    if (v != std::floor(v)) {
      const Entry& e = entry(section, key);
      fail(name_, e.line, "expected an integer for '" + key + "'");
    }
    return static_cast<int>(v);
  }

  std::string text(const std::string& section, const std::string& key) const {
    std::string raw = entry(section, key).raw;
    if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"')
      raw = raw.substr(1, raw.size() - 2);
    return raw;
  }

  std::string text_or(const std::string& section, const std::string& key,
                      const std::string& fallback) const {
    return has(section, key) ? text(section, key) : fallback;
  }

  bool boolean(const std::string& section, const std::string& key, bool fallback) const {
    if (!has(section, key)) return fallback;
    const Entry& e = entry(section, key);
    if (e.raw == "true") return true;
    if (e.raw == "false") return false;
    fail(name_, e.line, "expected true/false for '" + key + "'");
  }

  int line_of(const std::string& section, const std::string& key) const {
    return entry(section, key).line;
  }

  const std::string& name() const { return name_; }

 private:
  const Tree& tree_;
  std::string name_;
};

constexpr double kTwoPi = 2.0 * std::numbers::pi;

SpectralField build_c_field(const Reader& r, const PeriodicGrid& grid) {
  const std::string type = r.text_or("c_field", "type", "constant");
  if (type == "constant") {
    return SpectralField::constant(grid, r.number_or("c_field", "value", 1.0));
  }
  if (type == "cosine") {
    const double base = r.number_or("c_field", "value", 1.0);
    const double amp = r.number_or("c_field", "amplitude", 0.25);
    return SpectralField::sample(grid, [&](const std::array<double, 2>& x) {
      return base + amp * std::cos(kTwoPi * x[0]);
    });
  }
  fail(r.name(), r.line_of("c_field", "type"), "c_field type must be constant|cosine");
}

SpectralField periodized_bump(const PeriodicGrid& grid, double center, double width) {
  SpectralField raw = SpectralField::sample(grid, [&](const std::array<double, 2>& x) {
    double v = std::exp(width * (std::cos(kTwoPi * (x[0] - center)) - 1.0));
    if (grid.dim == 2) v *= std::exp(width * (std::cos(kTwoPi * (x[1] - center)) - 1.0));
    return v;
  });
  // Keep the datum band-limited at grid resolution.
  return dealias(raw);
}

SpectralField build_m0(const Reader& r, const PeriodicGrid& grid) {
  const std::string type = r.text_or("m0", "type", "uniform");
  if (type == "uniform") return SpectralField::constant(grid, 1.0);
  if (type == "cosine") {
    const double amp = r.number_or("m0", "amplitude", 0.5);
    const double center = r.number_or("m0", "center", 0.0);
    return SpectralField::sample(grid, [&](const std::array<double, 2>& x) {
      double v = 1.0 + amp * std::cos(kTwoPi * (x[0] - center));
      if (grid.dim == 2) v += amp * std::cos(kTwoPi * (x[1] - center));
      return v;
    });
  }
  if (type == "bump") {
    const double center = r.number_or("m0", "center", 0.5);
    const double width = r.number_or("m0", "width", 4.0);
    SpectralField bump = periodized_bump(grid, center, width);
    const double mass = bump.mean();
    const double scale = r.number_or("m0", "scale", 1.0);
    return (scale / mass) * bump;
  }
  fail(r.name(), r.line_of("m0", "type"), "m0 type must be uniform|cosine|bump");
}

SpectralField build_uT(const Reader& r, const PeriodicGrid& grid) {
  const std::string type = r.text_or("uT", "type", "zero");
  if (type == "zero") return SpectralField::zeros(grid);
  if (type == "cosine") {
    const double amp = r.number_or("uT", "amplitude", 0.2);
    const double center = r.number_or("uT", "center", 0.0);
    return SpectralField::sample(grid, [&](const std::array<double, 2>& x) {
      double v = amp * std::cos(kTwoPi * (x[0] - center));
      if (grid.dim == 2) v += amp * std::cos(kTwoPi * (x[1] - center));
      return v;
    });
  }
  if (type == "bump") {
    const double amp = r.number_or("uT", "amplitude", 0.2);
    const double center = r.number_or("uT", "center", 0.5);
    const double width = r.number_or("uT", "width", 4.0);
    SpectralField bump = periodized_bump(grid, center, width);
    return amp * (bump - SpectralField::constant(grid, bump.mean()));
  }
  fail(r.name(), r.line_of("uT", "type"), "uT type must be zero|cosine|bump");
}

nlohmann::json echo_tree(const Tree& tree) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [section, entries] : tree) {
    nlohmann::json* target = section.empty() ? &j : &j[section];
    if (!section.empty() && target->is_null()) *target = nlohmann::json::object();
    for (const auto& [key, e] : entries) (*target)[key] = e.raw;
  }
  return j;
}

}  // namespace

LoadedProblem parse_config(const std::string& text, const std::string& name) {
  const Tree tree = parse_tree(text, name);
  const Reader r(tree, name);

  const int d = r.integer("", "d");
  const int n = r.integer("", "n");
  PeriodicGrid grid;
  try {
    grid = make_grid(d, n);
  } catch (const std::exception& e) {
    fail(name, r.line_of("", "n"), e.what());
  }

  const double s = r.number("", "s");
  if (!(s > 0.0 && s < 1.0)) fail(name, r.line_of("", "s"), "fractional order s must lie in (0,1)");
  const double sigma = r.number_or("", "sigma", 0.0);
  if (!(sigma >= 0.0)) fail(name, r.line_of("", "sigma"), "sigma must be >= 0");
  const double horizon = r.number("", "T");
  if (!(horizon > 0.0)) fail(name, r.line_of("", "T"), "horizon T must be positive");
  const double gamma = r.number_or("", "gamma", 1.5);
  if (!(gamma > 1.0 && gamma <= 2.0))
    fail(name, r.line_of("", "gamma"), "gamma must lie in (1,2]");

  SpectralField c_field = build_c_field(r, grid);
  if (!(c_field.min_value() > 0.0))
    fail(name, r.has("c_field", "type") ? r.line_of("c_field", "type") : 1,
         "c(x) must be strictly positive");

  const double kappa = r.number_or("kernel", "kappa", 4.0);
  const std::string mode_name = r.text_or("", "coupling_mode", "monotone");
  CouplingMode mode;
  try {
    mode = coupling_mode_from_string(mode_name);
  } catch (const std::exception& e) {
    fail(name, r.line_of("", "coupling_mode"), e.what());
  }

  SpectralField m0 = build_m0(r, grid);
  for (std::size_t i = 0; i < m0.size(); ++i)
    if (m0.values()[i] < 0.0)
      throw std::invalid_argument(name + ": (I): m0 negative at node " + std::to_string(i));
  if (std::abs(m0.mean() - 1.0) > 1e-10)
    throw std::invalid_argument(name + ": (I): integral of m0 over the torus must equal 1, got " +
                                std::to_string(m0.mean()));

  LoadedProblem loaded{
      MFGProblem{grid, s, sigma, horizon, Hamiltonian(gamma, std::move(c_field)),
                 Coupling::gaussian(grid, kappa, mode), std::move(m0), build_uT(r, grid)},
      SolverConfig{},
      echo_tree(tree),
      fnv1a_hex(std::span<const char>(text.data(), text.size())),
      name};

  SolverConfig& solver = loaded.solver;
  solver.nt = r.has("", "Nt") ? r.integer("", "Nt") : 256;
  solver.damping = r.number_or("solver", "damping", 0.5);
  solver.tol = r.number_or("solver", "tol", 1e-6);
  solver.max_iter = static_cast<int>(r.number_or("solver", "max_iter", 60));
  solver.dealias = r.boolean("solver", "dealias", true);
  if (r.has("solver", "residual_ceiling"))
    solver.residual_ceiling = r.number("solver", "residual_ceiling");
  try {
    solver.integrator = integrator_from_string(r.text_or("solver", "integrator", "imex"));
    solver.metric = metric_from_string(r.text_or("solver", "metric", "l2_traj"));
    solver.validate();
    loaded.problem.validate();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(name + ": " + e.what());
  }
  return loaded;
}

LoadedProblem load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path);
}

}  // namespace fmfg
