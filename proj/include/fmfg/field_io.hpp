#pragma once

#include <string>

#include "fmfg/semigroup.hpp"

namespace fmfg {

/// Binary field checkpoint: little-endian, magic "FMFG", u32 version, u32 d,
/// u32 n, f64 s, f64 time, then n^d f64 values in row-major order.
inline constexpr std::uint32_t kFieldFormatVersion = 1;

struct LoadedField {
  SpectralField field;
  double s = 0.0;
  double time = 0.0;
};

void save_field(const SpectralField& f, double s, double time, const std::string& path);

/// Throws with "bad magic" / "unsupported version" / "unexpected EOF"; when
/// `expected` is given, a header grid mismatch is also an error.
LoadedField load_field(const std::string& path, const PeriodicGrid* expected = nullptr);

/// Persist a trajectory as checkpoints plus a JSON manifest
/// {T, Nt, s, sigma, kind}. At most `max_checkpoints` snapshots are written
/// (evenly strided); the manifest reflects what was written.
void save_trajectory(const Trajectory& traj, double s, double sigma, const std::string& kind,
                     const std::string& dir, int max_checkpoints = 64);

}  // namespace fmfg
