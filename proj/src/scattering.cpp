#include "nlkg/scattering.hpp"

#include <stdexcept>

#include "nlkg/functionals.hpp"

namespace nlkg {

namespace {

std::optional<std::string> contamination(const Trajectory& traj) {
  if (traj.clean()) return std::nullopt;
  return "boundary guard breached at " + std::to_string(traj.guard_violations.size()) +
         " samples; scattering data may contain reflections";
}

}  // namespace

State pullback(const State& st) {
  State out = inverse_free_flow(st, st.t);
  out.t = 0.0;
  return out;
}

ScatteringState extract_scattering_state(const Trajectory& traj) {
  if (traj.empty()) throw std::invalid_argument("empty trajectory");
  State v = pullback(traj.final());
  return {std::move(v.u), std::move(v.ut), contamination(traj)};
}

double scattering_error(const Trajectory& traj, const ScatteringState& scat, double t, double s) {
  const State& v = traj.at(t);
  const State free = free_flow(scat.as_state(), v.t);
  return hs_pair_norm(v - free, s);
}

std::vector<double> default_checkpoints(const Trajectory& traj) {
  if (traj.empty()) throw std::invalid_argument("empty trajectory");
  const double t0 = traj.initial().t, T = traj.final().t - t0;
  return {t0 + T / 8.0, t0 + T / 4.0, t0 + T / 2.0, t0 + T};
}

CauchyReport cauchy_report(const Trajectory& traj, double s, const std::vector<double>& checkpoints) {
  if (checkpoints.size() < 3) throw std::invalid_argument("cauchy_report needs at least three checkpoints");
  CauchyReport rep;
  rep.checkpoints = checkpoints;
  std::vector<State> pulled;
  pulled.reserve(checkpoints.size());
  for (double t : checkpoints) pulled.push_back(pullback(traj.at(t)));
  for (std::size_t i = 1; i < pulled.size(); ++i) rep.diffs.push_back(hs_pair_norm(pulled[i] - pulled[i - 1], s));
  rep.final_error = scattering_error(traj, extract_scattering_state(traj), checkpoints.back(), s);
  rep.warning = contamination(traj);
  return rep;
}

CauchyReport cauchy_report(const Trajectory& traj, double s) { return cauchy_report(traj, s, default_checkpoints(traj)); }

}  // namespace nlkg
