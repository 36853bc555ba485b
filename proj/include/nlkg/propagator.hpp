#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "nlkg/grid.hpp"

namespace nlkg {

/// (u, du/dt) at time t.
struct State {
  RadialField u;
  RadialField ut;
  double t = 0.0;

  explicit State(const RadialGrid& g, double time = 0.0);
  State(RadialField u0, RadialField u1, double time = 0.0);

  const RadialGrid& grid() const { return u.grid; }
  bool finite() const { return u.finite() && ut.finite(); }
};

/// Componentwise difference (keeps a.t).
State operator-(const State& a, const State& b);

struct EvolutionConfig {
  double p = 4.0;
  double dt = 1e-3;
  double T = 1.0;
  std::size_t sample_stride = 1;
  std::size_t dealias_pad = 2;
  /// Inner fraction of R that must hold >= 1 - 1e-6 of the L^2 mass of u.
  double boundary_guard = 0.9;
  /// With false the kick is skipped and evolve reduces to the exact linear flow.
  bool nonlinear = true;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  /// Number of Strang steps; T must be an integer multiple of dt.
  std::size_t steps() const;
  std::size_t sample_count() const { return steps() / sample_stride + 1; }
  /// Time of the k-th stored sample. Shared with the trajectory reader.
  double sample_time(std::size_t k) const { return static_cast<double>(k * sample_stride) * dt; }
};

struct Trajectory {
  EvolutionConfig config;
  RadialGrid grid;
  std::vector<double> times;
  std::vector<State> states;
  /// Sample times at which the boundary guard was breached.
  std::vector<double> guard_violations;

  bool clean() const { return guard_violations.empty(); }
  bool empty() const { return states.empty(); }
  std::size_t size() const { return states.size(); }
  /// Index of the sample at time t; throws std::out_of_range when t is not sampled.
  std::size_t index_of(double t) const;
  const State& at(double t) const { return states[index_of(t)]; }
  const State& initial() const { return states.front(); }
  const State& final() const { return states.back(); }
};

/// Raised when the solution stops being finite; carries the offending time.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, double time) : std::runtime_error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

using Observer = std::function<void(const State&)>;

/// Exact linear Klein-Gordon flow over tau with dispersion sqrt(1 + rho^2):
/// per mode (u, ut) -> (cos u + sin/omega ut, -omega sin u + cos ut).
State free_flow(const State& s, double tau);

/// free_flow(s, -tau).
State inverse_free_flow(const State& s, double tau);

/// P_n F(u) where F(u) = |u|^(p-1) u is evaluated pointwise on the grid refined
/// by `pad` and projected back onto the native band.
RadialField projected_power(const RadialField& u, double p, std::size_t pad);
SpectralField projected_power(const SpectralField& U, double p, std::size_t pad);

/// ut <- ut - tau P_n F(u).
State nonlinear_kick(const State& s, double tau, double p, std::size_t pad = 2);

/// free_flow(dt/2) o kick(dt) o free_flow(dt/2).
State strang_step(const State& s, double dt, double p, std::size_t pad = 2);

/// Fraction of the L^2 mass of u lying outside r = guard * R.
double outer_mass_fraction(const RadialField& u, double guard);

/// Strang integration from s0 over [s0.t, s0.t + T]. Samples every
/// sample_stride steps (including the initial state); observers see each sample.
/// Throws NumericalFailure on non-finite fields.
Trajectory evolve(const State& s0, const EvolutionConfig& cfg, std::span<const Observer> observers = {});

/// u_nl(t) = K(t) v0 - v(t) at a sampled instant.
State duhamel_tail(const Trajectory& traj, double t);

}  // namespace nlkg
