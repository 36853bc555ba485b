#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "nlkg/exponents.hpp"
#include "nlkg/multiplier.hpp"
#include "nlkg/propagator.hpp"

namespace nlkg {

/// Smoothing frequency N (dyadic), regularity s in (s_c(p), 1), exponent p in (3, 5).
struct IMethodParams {
  double N = 16.0;
  double s = 0.95;
  double p = 4.0;

  void validate() const;
  MultiplierSymbol symbol() const { return MultiplierSymbol::i_symbol(N, s); }
};

struct EnergyParts {
  double kinetic = 0.0;    // 1/2 int |u_t|^2
  double gradient = 0.0;   // 1/2 int |grad u|^2
  double mass = 0.0;       // 1/2 int |u|^2
  double potential = 0.0;  // 1/(p+1) int |u|^(p+1)

  double quadratic() const { return kinetic + gradient + mass; }
  double total() const { return quadratic() + potential; }
};

/// Energy split into its four integrals. The gradient term is taken in
/// frequency space (Plancherel on the resolved band); the potential is
/// integrated on the grid refined by `pad`, the grid the kick sees.
EnergyParts energy_parts(const State& st, double p, std::size_t pad = 1);
double energy(const State& st, double p, std::size_t pad = 1);

/// (I u, I u_t).
State apply_i(const State& st, const IMethodParams& prm);

/// E(Iu).
double mollified_energy(const State& st, const IMethodParams& prm, std::size_t pad = 1);

/// ||u||_{H^s} + ||u_t||_{H^{s-1}}.
double hs_pair_norm(const State& st, double s);

/// Trapezoid (int |values|^q dt)^(1/q) over the sample times; q = inf gives max.
double time_lebesgue(std::span<const double> times, std::span<const double> values, double q);

using FieldMap = std::function<RadialField(const State&)>;

/// ||transform(state)||_{L^q_t L^r_x} over the trajectory samples; transform defaults to u.
double spacetime_norm(const Trajectory& traj, double q, double r, const FieldMap& transform = {});

/// Z_{m,s} over the supplied pairs. Every pair must be wave admissible at level m.
double z_norm(const Trajectory& traj, double m, const IMethodParams& prm, std::span<const AdmissiblePair> pairs);

/// max over pairs of the two-term Z sum, each pair at its own level (the sup over
/// m of Z_{m,s} restricted to the given pairs).
double z_total(const Trajectory& traj, const IMethodParams& prm, std::span<const AdmissiblePair> pairs);

struct SlopeReport {
  std::vector<double> N;
  std::vector<double> values;
  /// Least-squares slope of log2(values) against log2(N); 0 for degenerate data.
  double slope = 0.0;
  bool slope_defined = false;
  /// Bound the slope is compared with (2(1-s) + 0.1 for the initial growth,
  /// -(5-p)/2 predicted for the almost-conservation sweep).
  double reference = 0.0;
  bool within_bound = true;
};

/// Least-squares slope of log2 y against log2 x. Returns nullopt when fewer than two
/// positive points remain or all y are equal.
std::optional<double> log2_slope(std::span<const double> x, std::span<const double> y);

/// E(Iu_0) for each N of an increasing dyadic list (>= 2 entries).
SlopeReport initial_mollified_growth(const State& data, double s, double p, std::span<const double> N_list,
                                     std::size_t pad = 1);

struct ConservationSweep {
  SlopeReport delta;                 // sup_t |E(Iu(t)) - E(Iu_0)| per N
  std::vector<double> initial;       // E(Iu_0) per N
  double predicted_slope = 0.0;      // -(5 - p)/2
  double energy_drift = 0.0;         // sup_t |E(u(t)) - E(u_0)| (integrator floor)
};

/// Evolves `data` once (u does not depend on N) and measures the mollified-energy
/// increment for every N of the list. `jobs` bounds the per-N worker count.
ConservationSweep almost_conservation_sweep(const State& data, double s, std::span<const double> N_list,
                                            const EvolutionConfig& cfg, int jobs = 1);

/// Same measurement on an already computed trajectory.
ConservationSweep almost_conservation_sweep(const Trajectory& traj, double s, std::span<const double> N_list,
                                            int jobs = 1);

/// Splits the sample window into consecutive intervals on which
/// ||Iu||_{L^{p+2}_{t,x}} stays <= threshold (greedy, trapezoid in time). Returns the
/// interval end points, starting with the first sample time.
std::vector<double> lp2_partition(const Trajectory& traj, const IMethodParams& prm, double threshold);

/// One row of diagnostics at a sample time.
struct DiagnosticsRecord {
  double t = 0.0;
  double E_u = 0.0;
  double E_Iu = 0.0;
  double hs_pair = 0.0;
  double origin_value_Iu = 0.0;
  double morawetz_potential_cum = 0.0;
  double origin_term_cum = 0.0;
  double R1_cum = 0.0;
  double R2_cum = 0.0;
  double radial_sobolev_ratio = 0.0;
};

}  // namespace nlkg
