#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlkg/propagator.hpp"

namespace nlkg {

/// K^-1(t) v(t): the state pulled back to t = 0 by the free flow.
State pullback(const State& st);

struct ScatteringState {
  RadialField u_plus_0;
  RadialField u_plus_1;
  std::optional<std::string> warning;

  State as_state() const { return State(u_plus_0, u_plus_1, 0.0); }
};

/// Pullback of the final sample. The truncation of the Duhamel integral at T is
/// exactly the tail Cauchy difference measured by cauchy_report.
ScatteringState extract_scattering_state(const Trajectory& traj);

/// hs_pair_norm(v(t) - K(t) v_+) for a sampled t.
double scattering_error(const Trajectory& traj, const ScatteringState& scat, double t, double s);

struct CauchyReport {
  std::vector<double> checkpoints;
  /// diffs[i] = ||K^-1(t_{i+1}) v(t_{i+1}) - K^-1(t_i) v(t_i)||_{H^s x H^{s-1}}.
  std::vector<double> diffs;
  /// scattering_error at the last checkpoint against extract_scattering_state.
  double final_error = 0.0;
  std::optional<std::string> warning;
};

/// {T/8, T/4, T/2, T} relative to the trajectory start.
std::vector<double> default_checkpoints(const Trajectory& traj);

/// Throws std::invalid_argument for fewer than three checkpoints and
/// std::out_of_range for checkpoints that are not sample times.
CauchyReport cauchy_report(const Trajectory& traj, double s, const std::vector<double>& checkpoints);
CauchyReport cauchy_report(const Trajectory& traj, double s);

}  // namespace nlkg
