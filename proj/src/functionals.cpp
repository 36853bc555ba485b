#include "nlkg/functionals.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "nlkg/kernels.hpp"
#include "nlkg/norms.hpp"
#include "nlkg/transform.hpp"

namespace nlkg {

void IMethodParams::validate() const {
  if (!(p > 3.0 && p < 5.0)) throw std::invalid_argument("p must satisfy 3 < p < 5");
  if (!is_dyadic(N) || !(N > 1.0)) throw std::invalid_argument("N must be a dyadic number > 1");
  const double sc = critical_exponent(p);
  if (!(s > sc && s < 1.0)) {
    throw std::invalid_argument("s must satisfy s_c(p) = " + std::to_string(sc) + " < s < 1");
  }
}

EnergyParts energy_parts(const State& st, double p, std::size_t pad) {
  const RadialGrid& g = st.grid();
  const double four_pi_dr = 4.0 * std::numbers::pi * g.dr();
  EnergyParts e;
  e.kinetic = 0.5 * four_pi_dr * kernels::radial_moment(st.ut.values, g.dr(), 2, 2.0);
  e.mass = 0.5 * four_pi_dr * kernels::radial_moment(st.u.values, g.dr(), 2, 2.0);
  const SpectralField U = to_spectral(st.u);
  e.gradient = 0.5 * gradient_norm_squared(U);
  if (pad <= 1) {
    e.potential = four_pi_dr * kernels::radial_moment(st.u.values, g.dr(), 2, p + 1.0) / (p + 1.0);
  } else {
    const std::size_t m = transform::padded_size(g.size(), pad);
    const std::vector<double> up = transform::synthesize(g.radius(), U.coeffs, m);
    const double drp = g.radius() / static_cast<double>(m + 1);
    e.potential = 4.0 * std::numbers::pi * drp * kernels::radial_moment(up, drp, 2, p + 1.0) / (p + 1.0);
  }
  return e;
}

double energy(const State& st, double p, std::size_t pad) { return energy_parts(st, p, pad).total(); }

State apply_i(const State& st, const IMethodParams& prm) {
  const MultiplierSymbol m = prm.symbol();
  return State(apply_multiplier(st.u, m), apply_multiplier(st.ut, m), st.t);
}

double mollified_energy(const State& st, const IMethodParams& prm, std::size_t pad) {
  return energy(apply_i(st, prm), prm.p, pad);
}

double hs_pair_norm(const State& st, double s) { return sobolev_norm(st.u, s) + sobolev_norm(st.ut, s - 1.0); }

double time_lebesgue(std::span<const double> times, std::span<const double> values, double q) {
  if (times.size() != values.size()) throw std::invalid_argument("times and values differ in length");
  if (times.empty()) throw std::invalid_argument("empty time series");
  if (std::isinf(q)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::fabs(v));
    return m;
  }
  if (!(q >= 1.0)) throw std::invalid_argument("time exponent must be >= 1");
  double s = 0.0;
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double a = std::pow(std::fabs(values[i - 1]), q), b = std::pow(std::fabs(values[i]), q);
    s += 0.5 * (times[i] - times[i - 1]) * (a + b);
  }
  return s == 0.0 ? 0.0 : std::pow(s, 1.0 / q);
}

double spacetime_norm(const Trajectory& traj, double q, double r, const FieldMap& transform) {
  if (traj.empty()) throw std::invalid_argument("spacetime norm of an empty trajectory");
  std::vector<double> values(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    values[i] = transform ? lebesgue_norm(transform(traj.states[i]), r) : lebesgue_norm(traj.states[i].u, r);
  }
  return time_lebesgue(traj.times, values, q);
}

namespace {

double z_pair_value(const Trajectory& traj, const IMethodParams& prm, const AdmissiblePair& pair) {
  const MultiplierSymbol I = prm.symbol();
  const MultiplierSymbol time_part = MultiplierSymbol::bracket_power(-pair.m) * I;
  const MultiplierSymbol space_part = MultiplierSymbol::bracket_power(1.0 - pair.m) * I;
  const double a = spacetime_norm(traj, pair.q, pair.r,
                                  [&](const State& st) { return apply_multiplier(st.ut, time_part); });
  const double b = spacetime_norm(traj, pair.q, pair.r,
                                  [&](const State& st) { return apply_multiplier(st.u, space_part); });
  return a + b;
}

}  // namespace

double z_norm(const Trajectory& traj, double m, const IMethodParams& prm, std::span<const AdmissiblePair> pairs) {
  for (const auto& pr : pairs) {
    const auto a = is_wave_admissible(pr.q, pr.r, 3);
    if (!a.admissible || std::fabs(a.m - m) > 1e-12) {
      throw std::invalid_argument("pair (" + std::to_string(pr.q) + ", " + std::to_string(pr.r) +
                                  ") is not wave admissible at level m = " + std::to_string(m));
    }
  }
  double best = 0.0;
  for (const auto& pr : pairs) best = std::max(best, z_pair_value(traj, prm, {pr.q, pr.r, m}));
  return best;
}

double z_total(const Trajectory& traj, const IMethodParams& prm, std::span<const AdmissiblePair> pairs) {
  double best = 0.0;
  for (const auto& pr : pairs) {
    const auto a = is_wave_admissible(pr.q, pr.r, 3);
    if (!a.admissible) throw std::invalid_argument("non-admissible pair in Z list");
    best = std::max(best, z_pair_value(traj, prm, {pr.q, pr.r, a.m}));
  }
  return best;
}

std::optional<double> log2_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("slope fit operands differ in length");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0) {
      lx.push_back(std::log2(x[i]));
      ly.push_back(std::log2(y[i]));
    }
  }
  if (lx.size() < 2) return std::nullopt;
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  if (*hi - *lo <= 1e-13 * std::fabs(*hi)) return 0.0;
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

namespace {

void require_dyadic_list(std::span<const double> N_list, std::size_t min_entries) {
  if (N_list.size() < min_entries) {
    throw std::invalid_argument("N list needs at least " + std::to_string(min_entries) + " entries");
  }
  for (std::size_t i = 0; i < N_list.size(); ++i) {
    if (!is_dyadic(N_list[i]) || !(N_list[i] > 1.0)) throw std::invalid_argument("N list entries must be dyadic > 1");
    if (i > 0 && !(N_list[i] > N_list[i - 1])) throw std::invalid_argument("N list must be increasing");
  }
}

}  // namespace

SlopeReport initial_mollified_growth(const State& data, double s, double p, std::span<const double> N_list,
                                     std::size_t pad) {
  require_dyadic_list(N_list, 2);
  SlopeReport rep;
  rep.N.assign(N_list.begin(), N_list.end());
  for (double N : N_list) {
    IMethodParams prm{N, s, p};
    prm.validate();
    rep.values.push_back(mollified_energy(data, prm, pad));
  }
  const auto slope = log2_slope(rep.N, rep.values);
  rep.slope_defined = slope.has_value();
  rep.slope = slope.value_or(0.0);
  rep.reference = 2.0 * (1.0 - s) + 0.1;
  rep.within_bound = rep.slope <= rep.reference;
  return rep;
}

ConservationSweep almost_conservation_sweep(const Trajectory& traj, double s, std::span<const double> N_list,
                                            int jobs) {
  require_dyadic_list(N_list, 1);
  if (traj.empty()) throw std::invalid_argument("empty trajectory");
  const double p = traj.config.p;
  const std::size_t pad = traj.config.dealias_pad;
  for (double N : N_list) IMethodParams{N, s, p}.validate();

  ConservationSweep out;
  out.delta.N.assign(N_list.begin(), N_list.end());
  out.delta.values.assign(N_list.size(), 0.0);
  out.initial.assign(N_list.size(), 0.0);
  out.predicted_slope = -(5.0 - p) / 2.0;

  std::exception_ptr failure;
  const auto count = static_cast<long long>(N_list.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, jobs))
  for (long long i = 0; i < count; ++i) {
    try {
      const IMethodParams prm{N_list[static_cast<std::size_t>(i)], s, p};
      const double e0 = mollified_energy(traj.initial(), prm, pad);
      double worst = 0.0;
      for (const State& st : traj.states) worst = std::max(worst, std::fabs(mollified_energy(st, prm, pad) - e0));
      out.initial[static_cast<std::size_t>(i)] = e0;
      out.delta.values[static_cast<std::size_t>(i)] = worst;
    } catch (...) {
#pragma omp critical(nlkg_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  const double e0 = energy(traj.initial(), p, pad);
  for (const State& st : traj.states) out.energy_drift = std::max(out.energy_drift, std::fabs(energy(st, p, pad) - e0));

  const auto slope = log2_slope(out.delta.N, out.delta.values);
  out.delta.slope_defined = slope.has_value() && N_list.size() >= 2;
  out.delta.slope = out.delta.slope_defined ? *slope : 0.0;
  out.delta.reference = out.predicted_slope;
  out.delta.within_bound = !out.delta.slope_defined || out.delta.slope <= -0.25;
  return out;
}

ConservationSweep almost_conservation_sweep(const State& data, double s, std::span<const double> N_list,
                                            const EvolutionConfig& cfg, int jobs) {
  const Trajectory traj = evolve(data, cfg);
  return almost_conservation_sweep(traj, s, N_list, jobs);
}

std::vector<double> lp2_partition(const Trajectory& traj, const IMethodParams& prm, double threshold) {
  if (traj.empty()) throw std::invalid_argument("empty trajectory");
  if (!(threshold > 0.0)) throw std::invalid_argument("partition threshold must be positive");
  const double q = prm.p + 2.0;
  const double budget = std::pow(threshold, q);
  const MultiplierSymbol I = prm.symbol();
  std::vector<double> density(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) density[i] = std::pow(lebesgue_norm(apply_multiplier(traj.states[i].u, I), q), q);
  std::vector<double> ends{traj.times.front()};
  double acc = 0.0;
  for (std::size_t i = 1; i < traj.size(); ++i) {
    const double piece = 0.5 * (traj.times[i] - traj.times[i - 1]) * (density[i] + density[i - 1]);
    if (acc + piece > budget && i > 1 && traj.times[i - 1] > ends.back()) {
      ends.push_back(traj.times[i - 1]);
      acc = 0.0;
    }
    acc += piece;
  }
  if (traj.times.back() > ends.back()) ends.push_back(traj.times.back());
  return ends;
}

}  // namespace nlkg
