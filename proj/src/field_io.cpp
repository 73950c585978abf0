#include "fmfg/field_io.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace fmfg {

namespace {

void write_u32(std::ofstream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void write_f64(std::ofstream& out, double v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t read_u32(std::ifstream& in) {
  std::uint32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw std::runtime_error("unexpected EOF");
  return v;
}

double read_f64(std::ifstream& in) {
  double v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw std::runtime_error("unexpected EOF");
  return v;
}

}  // namespace

void save_field(const SpectralField& f, double s, double time, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.write("FMFG", 4);
  write_u32(out, kFieldFormatVersion);
  write_u32(out, static_cast<std::uint32_t>(f.grid().dim));
  write_u32(out, static_cast<std::uint32_t>(f.grid().n));
  write_f64(out, s);
  write_f64(out, time);
  out.write(reinterpret_cast<const char*>(f.values().data()),
            static_cast<std::streamsize>(f.values().size() * sizeof(double)));
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

LoadedField load_field(const std::string& path, const PeriodicGrid* expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  char magic[4] = {};
  in.read(magic, 4);
  if (!in) throw std::runtime_error("unexpected EOF");
  if (std::memcmp(magic, "FMFG", 4) != 0) throw std::runtime_error("bad magic");
  const std::uint32_t version = read_u32(in);
  if (version != kFieldFormatVersion)
    throw std::runtime_error("unsupported version " + std::to_string(version));
  const std::uint32_t dim = read_u32(in);
  const std::uint32_t n = read_u32(in);
  const double s = read_f64(in);
  const double time = read_f64(in);
  const PeriodicGrid grid = make_grid(static_cast<int>(dim), static_cast<int>(n));
  if (expected && !(grid == *expected)) throw std::runtime_error("grid mismatch");

  std::vector<double> values(grid.size());
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (!in) throw std::runtime_error("unexpected EOF");
  return {SpectralField(grid, std::move(values)), s, time};
}

void save_trajectory(const Trajectory& traj, double s, double sigma, const std::string& kind,
                     const std::string& dir, int max_checkpoints) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const int nt = traj.steps();
  const int stride = std::max(1, (nt + max_checkpoints - 1) / max_checkpoints);

  nlohmann::json manifest;
  manifest["T"] = traj.t_end - traj.t_start;
  manifest["s"] = s;
  manifest["sigma"] = sigma;
  manifest["kind"] = kind;
  nlohmann::json files = nlohmann::json::array();

  int written = 0;
  for (int i = 0; i <= nt; i += stride, ++written) {
    char name[64];
    std::snprintf(name, sizeof name, "%s_%05d.fmfg", kind.c_str(), i);
    save_field(traj.fields[i], s, traj.time(i), (fs::path(dir) / name).string());
    files.push_back({{"file", name}, {"time", traj.time(i)}, {"index", i}});
  }
  if ((nt % stride) != 0) {
    char name[64];
    std::snprintf(name, sizeof name, "%s_%05d.fmfg", kind.c_str(), nt);
    save_field(traj.fields[nt], s, traj.time(nt), (fs::path(dir) / name).string());
    files.push_back({{"file", name}, {"time", traj.time(nt)}, {"index", nt}});
    ++written;
  }
  manifest["Nt"] = written - 1;
  manifest["checkpoints"] = files;

  std::ofstream out(fs::path(dir) / (kind + "_manifest.json"));
  out << manifest.dump(2) << "\n";
}

}  // namespace fmfg
