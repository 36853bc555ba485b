#include "nlkg/harness/trajectory_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

#include "nlkg/harness/config.hpp"

namespace nlkg::harness {

namespace {

template <class T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
    std::memcpy(&v, b, sizeof(T));
    return v;
  }
}

template <class T>
void put(std::ostream& out, T v) {
  v = to_little(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T take(std::istream& in, const char* what) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) throw IoError(std::string("trajectory file truncated in ") + what);
  return to_little(v);
}

void put_array(std::ostream& out, const std::vector<double>& v) {
  for (double x : v) put(out, x);
}

void take_array(std::istream& in, std::vector<double>& v) {
  if constexpr (std::endian::native == std::endian::little) {
    if (!in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)))) {
      throw IoError("trajectory file truncated in a frame");
    }
  } else {
    for (double& x : v) x = take<double>(in, "a frame");
  }
}

}  // namespace

void write_trajectory(std::ostream& out, const Trajectory& traj, double s, double N) {
  out.write("NLKG", 4);
  put<std::uint32_t>(out, kTrajectoryVersion);
  put<std::uint64_t>(out, traj.grid.size());
  put<double>(out, traj.grid.radius());
  put<double>(out, traj.config.dt);
  put<std::uint64_t>(out, traj.size());
  put<double>(out, traj.config.p);
  put<double>(out, s);
  put<double>(out, N);
  put<std::uint64_t>(out, traj.config.sample_stride);
  for (const State& st : traj.states) {
    put_array(out, st.u.values);
    put_array(out, st.ut.values);
  }
  if (!out) throw IoError("failed writing trajectory");
}

void write_trajectory(const std::string& path, const Trajectory& traj, double s, double N) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_trajectory(out, traj, s, N);
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

TrajectoryFile read_trajectory(std::istream& in, const EvolutionConfig& base) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "NLKG", 4) != 0) throw IoError("not a trajectory file (bad magic)");
  const auto version = take<std::uint32_t>(in, "the version");
  if (version != kTrajectoryVersion) throw IoError("unsupported trajectory version " + std::to_string(version));
  const auto n = take<std::uint64_t>(in, "the header");
  const auto R = take<double>(in, "the header");
  const auto dt = take<double>(in, "the header");
  const auto count = take<std::uint64_t>(in, "the header");
  const auto p = take<double>(in, "the header");
  const auto s = take<double>(in, "the header");
  const auto N = take<double>(in, "the header");
  const auto stride = take<std::uint64_t>(in, "the header");
  if (count == 0 || stride == 0) throw IoError("trajectory header holds no samples");

  RadialGrid grid = [&] {
    try {
      return RadialGrid(R, n);
    } catch (const std::invalid_argument& e) {
      throw IoError(std::string("trajectory header: ") + e.what());
    }
  }();
  EvolutionConfig cfg = base;
  cfg.p = p;
  cfg.dt = dt;
  cfg.sample_stride = stride;
  cfg.T = static_cast<double>((count - 1) * stride) * dt;

  TrajectoryFile out{Trajectory{cfg, grid, {}, {}, {}}, s, N};
  Trajectory& traj = out.trajectory;
  traj.times.reserve(count);
  traj.states.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    const double t = cfg.sample_time(k);
    State st(grid, t);
    take_array(in, st.u.values);
    take_array(in, st.ut.values);
    if (outer_mass_fraction(st.u, cfg.boundary_guard) > 1e-6) traj.guard_violations.push_back(t);
    traj.times.push_back(t);
    traj.states.push_back(std::move(st));
  }
  return out;
}

TrajectoryFile read_trajectory(const std::string& path, const EvolutionConfig& base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open trajectory '" + path + "'");
  return read_trajectory(in, base);
}

}  // namespace nlkg::harness
