#include "nlkg/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlkg/kernels.hpp"
#include "nlkg/transform.hpp"

namespace nlkg {

State::State(const RadialGrid& g, double time) : u(g), ut(g), t(time) {}

State::State(RadialField u0, RadialField u1, double time) : u(std::move(u0)), ut(std::move(u1)), t(time) {
  require_same_grid(u.grid, ut.grid);
}

State operator-(const State& a, const State& b) { return State(a.u - b.u, a.ut - b.ut, a.t); }

void EvolutionConfig::validate() const {
  if (nonlinear && !(p > 3.0 && p < 5.0)) throw std::invalid_argument("p must satisfy 3 < p < 5");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("evolution.dt must be positive");
  if (!(T >= 0.0) || !std::isfinite(T)) throw std::invalid_argument("evolution.T must be >= 0");
  if (sample_stride == 0) throw std::invalid_argument("evolution.sample_stride must be >= 1");
  if (dealias_pad == 0) throw std::invalid_argument("evolution.dealias_pad must be >= 1");
  if (!(boundary_guard > 0.0 && boundary_guard <= 1.0)) {
    throw std::invalid_argument("evolution.boundary_guard must lie in (0, 1]");
  }
  const double ratio = T / dt;
  if (std::fabs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
    throw std::invalid_argument("evolution.T must be an integer multiple of evolution.dt");
  }
}

std::size_t EvolutionConfig::steps() const { return static_cast<std::size_t>(std::llround(T / dt)); }

std::size_t Trajectory::index_of(double t) const {
  const double tol = 1e-12 * std::max(1.0, std::fabs(t));
  auto it = std::lower_bound(times.begin(), times.end(), t - tol);
  if (it == times.end() || std::fabs(*it - t) > tol) {
    throw std::out_of_range("time " + std::to_string(t) + " is not a sample of the trajectory");
  }
  return static_cast<std::size_t>(it - times.begin());
}

namespace {

// Per-mode rotation by the free Klein-Gordon flow.
struct Rotation {
  std::vector<double> c, s, omega;

  Rotation(const RadialGrid& g, double tau) : c(g.size()), s(g.size()), omega(g.size()) {
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double rho = g.frequency(k);
      omega[k] = std::sqrt(1.0 + rho * rho);
      c[k] = std::cos(tau * omega[k]);
      s[k] = std::sin(tau * omega[k]);
    }
  }

  void apply(std::vector<double>& a, std::vector<double>& b) const {
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double a0 = a[k], b0 = b[k];
      a[k] = c[k] * a0 + s[k] / omega[k] * b0;
      b[k] = -omega[k] * s[k] * a0 + c[k] * b0;
    }
  }
};

std::vector<double> projected_power_coeffs(double radius, std::span<const double> coeffs, double p, std::size_t pad) {
  const std::size_t m = transform::padded_size(coeffs.size(), pad);
  std::vector<double> u = transform::synthesize(radius, coeffs, m);
  kernels::power_nonlinearity(u, p, u);
  return transform::analyze(radius, u, coeffs.size());
}

bool all_finite(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return std::isfinite(s);
}

}  // namespace

State free_flow(const State& s, double tau) {
  SpectralField a = to_spectral(s.u), b = to_spectral(s.ut);
  Rotation(s.grid(), tau).apply(a.coeffs, b.coeffs);
  return State(to_physical(a), to_physical(b), s.t + tau);
}

State inverse_free_flow(const State& s, double tau) { return free_flow(s, -tau); }

SpectralField projected_power(const SpectralField& U, double p, std::size_t pad) {
  return SpectralField(U.grid, projected_power_coeffs(U.grid.radius(), U.coeffs, p, pad));
}

RadialField projected_power(const RadialField& u, double p, std::size_t pad) {
  return to_physical(projected_power(to_spectral(u), p, pad));
}

State nonlinear_kick(const State& s, double tau, double p, std::size_t pad) {
  if (tau == 0.0) return s;
  const RadialField f = projected_power(s.u, p, pad);
  State out = s;
  for (std::size_t j = 0; j < out.ut.size(); ++j) out.ut[j] -= tau * f[j];
  return out;
}

State strang_step(const State& s, double dt, double p, std::size_t pad) {
  if (dt == 0.0) return s;
  State half = free_flow(s, 0.5 * dt);
  half = nonlinear_kick(half, dt, p, pad);
  return free_flow(half, 0.5 * dt);
}

double outer_mass_fraction(const RadialField& u, double guard) {
  const double dr = u.grid.dr();
  const double cut = guard * u.grid.radius();
  double inner = 0.0, outer = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double r = u.grid.node(j);
    const double m = r * r * u[j] * u[j];
    (r <= cut ? inner : outer) += m;
  }
  const double total = (inner + outer) * dr;
  return total == 0.0 ? 0.0 : outer * dr / total;
}

Trajectory evolve(const State& s0, const EvolutionConfig& cfg, std::span<const Observer> observers) {
  cfg.validate();
  if (!s0.finite()) throw NumericalFailure("initial state is not finite", s0.t);
  const RadialGrid& g = s0.grid();
  Trajectory traj{cfg, g, {}, {}, {}};
  const std::size_t nsteps = cfg.steps();
  traj.times.reserve(cfg.sample_count());
  traj.states.reserve(cfg.sample_count());

  SpectralField a = to_spectral(s0.u), b = to_spectral(s0.ut);
  const Rotation half(g, 0.5 * cfg.dt);

  auto record = [&](std::size_t k) {
    const double t = s0.t + cfg.sample_time(k);
    State st = k == 0 ? s0 : State(to_physical(a), to_physical(b), t);
    if (!st.finite()) throw NumericalFailure("non-finite field at t = " + std::to_string(t), t);
    if (outer_mass_fraction(st.u, cfg.boundary_guard) > 1e-6) traj.guard_violations.push_back(t);
    for (const auto& obs : observers) obs(st);
    traj.times.push_back(t);
    traj.states.push_back(std::move(st));
  };

  record(0);
  for (std::size_t step = 1; step <= nsteps; ++step) {
    half.apply(a.coeffs, b.coeffs);
    if (cfg.nonlinear) {
      const std::vector<double> f = projected_power_coeffs(g.radius(), a.coeffs, cfg.p, cfg.dealias_pad);
      for (std::size_t k = 0; k < f.size(); ++k) b[k] -= cfg.dt * f[k];
    }
    half.apply(a.coeffs, b.coeffs);
    if (!all_finite(b.coeffs) || !all_finite(a.coeffs)) {
      const double t = s0.t + static_cast<double>(step) * cfg.dt;
      throw NumericalFailure("non-finite field at t = " + std::to_string(t), t);
    }
    if (step % cfg.sample_stride == 0) record(step / cfg.sample_stride);
  }
  return traj;
}

State duhamel_tail(const Trajectory& traj, double t) {
  const State& v = traj.at(t);
  const State& v0 = traj.initial();
  return free_flow(v0, t - v0.t) - v;
}

}  // namespace nlkg
