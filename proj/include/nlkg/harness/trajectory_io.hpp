#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "nlkg/propagator.hpp"

namespace nlkg::harness {

/// Binary layout (all little-endian):
///   "NLKG", u32 version,
///   u64 n, f64 R, f64 dt, u64 count, f64 p, f64 s, f64 N, u64 sample_stride,
///   then count frames of n f64 (u) followed by n f64 (ut).
/// Sample k sits at t = k * sample_stride * dt.
inline constexpr std::uint32_t kTrajectoryVersion = 1;

struct TrajectoryFile {
  Trajectory trajectory;
  double s = 0.0;
  double N = 0.0;
};

void write_trajectory(std::ostream& out, const Trajectory& traj, double s, double N);
void write_trajectory(const std::string& path, const Trajectory& traj, double s, double N);

/// Throws IoError on a short read, bad magic or an unsupported version. The
/// evolution fields not stored in the file (pad, guard, nonlinear) come from `base`;
/// guard violations are recomputed from the samples.
TrajectoryFile read_trajectory(std::istream& in, const EvolutionConfig& base = {});
TrajectoryFile read_trajectory(const std::string& path, const EvolutionConfig& base = {});

}  // namespace nlkg::harness
