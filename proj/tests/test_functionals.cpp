#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "nlkg/data.hpp"
#include "nlkg/functionals.hpp"
#include "nlkg/norms.hpp"

using namespace nlkg;
using std::numbers::pi;

namespace {

RadialField sine_mode(const RadialGrid& g, std::size_t k) {
  RadialField f(g);
  const double rho = g.frequency(k);
  for (std::size_t j = 0; j < g.size(); ++j) f[j] = std::sin(rho * g.node(j)) / g.node(j);
  return f;
}

Trajectory free_run(const State& d, double T, double dt, std::size_t stride) {
  EvolutionConfig c;
  c.dt = dt;
  c.T = T;
  c.sample_stride = stride;
  c.nonlinear = false;
  return evolve(d, c);
}

}  // namespace

TEST_CASE("energy of a single mode") {
  RadialGrid g(10.0, 256);
  const std::size_t k = 6;
  const double rho = g.frequency(k), R = g.radius();
  const State st(sine_mode(g, k), sine_mode(g, k));
  const EnergyParts e = energy_parts(st, 4.0);
  CHECK(e.mass == doctest::Approx(pi * R).epsilon(1e-12));
  CHECK(e.kinetic == doctest::Approx(pi * R).epsilon(1e-12));
  CHECK(e.gradient == doctest::Approx(pi * R * rho * rho).epsilon(1e-12));
  CHECK(e.potential > 0.0);
}

TEST_CASE("gaussian energy against the closed form") {
  RadialGrid g(30.0, 4096);
  for (double A : {0.5, 1.0, 2.0}) {
    const State d = gaussian_data(g, A);
    const double p = 4.0;
    const double oracle = A * A * (0.75 + 0.5) * std::pow(pi, 1.5) +
                          std::pow(A, p + 1) / (p + 1) * std::pow(2.0 * pi / (p + 1), 1.5);
    CHECK(std::fabs(energy(d, p, 1) - oracle) <= 1e-6 * oracle);
    CHECK(std::fabs(energy(d, p, 2) - oracle) <= 1e-6 * oracle);
  }
}

TEST_CASE("mollified energy reduces to the energy when I is the identity") {
  RadialGrid g(30.0, 256);
  RoughSpec spec;
  spec.seed = 4;
  const State d = rough_spectral_data(g, spec);
  const IMethodParams prm{32.0, 0.95, 4.0};
  REQUIRE(prm.N > g.max_frequency());
  CHECK(mollified_energy(d, prm) == doctest::Approx(energy(d, 4.0)).epsilon(1e-13));
}

TEST_CASE("I scales a high mode by m(rho)^2 in the quadratic energy") {
  RadialGrid g(10.0 * pi, 256);
  const std::size_t k = 39;
  REQUIRE(g.frequency(k) == doctest::Approx(4.0));
  for (double s : {0.6, 0.95}) {
    const IMethodParams prm{1.0, s, 4.0};
    const State st(sine_mode(g, k), sine_mode(g, k));
    const double ratio = energy_parts(apply_i(st, prm), 4.0).quadratic() / energy_parts(st, 4.0).quadratic();
    CHECK(ratio == doctest::Approx(std::pow(0.25, 2.0 * (1.0 - s))).epsilon(1e-10));
  }
}

TEST_CASE("I method parameter validation") {
  CHECK_NOTHROW(IMethodParams{16.0, 0.95, 4.0}.validate());
  CHECK_THROWS_AS(IMethodParams({12.0, 0.95, 4.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(IMethodParams({16.0, 0.8, 4.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(IMethodParams({16.0, 1.0, 4.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(IMethodParams({16.0, 0.95, 5.0}).validate(), std::invalid_argument);
}

TEST_CASE("hs pair norm") {
  RadialGrid g(30.0, 512);
  CHECK(hs_pair_norm(State(g), 0.95) == 0.0);
  const State d = gaussian_data(g, 1.0);
  CHECK(hs_pair_norm(d, 0.95) == doctest::Approx(sobolev_norm(d.u, 0.95)));
  CHECK(hs_pair_norm(State(2.0 * d.u, d.ut), 0.95) == doctest::Approx(2.0 * hs_pair_norm(d, 0.95)));
}

TEST_CASE("time Lebesgue norms") {
  const std::vector<double> t{0.0, 0.5, 1.0}, v{2.0, 2.0, 2.0};
  CHECK(time_lebesgue(t, v, 2.0) == doctest::Approx(2.0));
  CHECK(time_lebesgue(t, v, 1.0) == doctest::Approx(2.0));
  CHECK(time_lebesgue(t, v, std::numeric_limits<double>::infinity()) == 2.0);
  CHECK_THROWS_AS(time_lebesgue(t, std::vector<double>{1.0}, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(time_lebesgue(std::vector<double>{}, std::vector<double>{}, 2.0), std::invalid_argument);
}

TEST_CASE("spacetime norm of a free single mode") {
  RadialGrid g(10.0, 256);
  const std::size_t k = 2;
  const double omega = std::sqrt(1 + std::pow(g.frequency(k), 2));
  const State d(sine_mode(g, k), RadialField(g));
  const double T = 2.0 * pi / omega * 3;
  const double dt = T / 3000;
  const Trajectory tr = free_run(d, T, dt, 1);
  for (double r : {2.0, 4.0}) {
    const double fr = lebesgue_norm(d.u, r);
    CHECK(spacetime_norm(tr, std::numeric_limits<double>::infinity(), r) == doctest::Approx(fr).epsilon(1e-12));
    CHECK(spacetime_norm(tr, 2.0, r) == doctest::Approx(fr * std::sqrt(T / 2)).epsilon(1e-5));
  }
  Trajectory empty = tr;
  empty.states.clear();
  empty.times.clear();
  CHECK_THROWS(spacetime_norm(empty, 2.0, 2.0));
}

TEST_CASE("Z norms") {
  RadialGrid g(30.0, 256);
  const State d = gaussian_data(g, 1.0);
  const Trajectory tr = free_run(d, 2.0, 0.05, 2);
  const IMethodParams prm{4.0, 0.95, 4.0};
  const auto pairs = default_pairs(0.95);

  const std::vector<AdmissiblePair> energy_pair{pairs[0]};
  const MultiplierSymbol I = prm.symbol();
  double a = 0.0, b = 0.0;
  for (const State& st : tr.states) {
    a = std::max(a, lebesgue_norm(apply_multiplier(st.ut, I), 2.0));
    b = std::max(b, lebesgue_norm(apply_multiplier(st.u, MultiplierSymbol::bracket_power(1.0) * I), 2.0));
  }
  CHECK(z_norm(tr, 0.0, prm, energy_pair) == doctest::Approx(a + b).epsilon(1e-12));
  CHECK_THROWS_AS(z_norm(tr, 0.5, prm, energy_pair), std::invalid_argument);

  const double one = z_total(tr, prm, energy_pair);
  const double all = z_total(tr, prm, pairs);
  CHECK(all >= one);
  const std::vector<AdmissiblePair> bad{{3.0, 2.0, 0.0}};
  CHECK_THROWS_AS(z_total(tr, prm, bad), std::invalid_argument);
}

TEST_CASE("log2 slope") {
  const std::vector<double> N{4, 8, 16, 32};
  std::vector<double> y;
  for (double n : N) y.push_back(3.0 * std::pow(n, -0.5));
  CHECK(*log2_slope(N, y) == doctest::Approx(-0.5));
  CHECK(*log2_slope(N, std::vector<double>(4, 2.0)) == 0.0);
  CHECK_FALSE(log2_slope(N, std::vector<double>{1.0, 0.0, 0.0, 0.0}).has_value());
  CHECK_THROWS(log2_slope(N, std::vector<double>{1.0}));
}

TEST_CASE("initial mollified energy grows for rough data and not for band-limited data") {
  RadialGrid g(32.0, 1024);
  const std::vector<double> N{4, 8, 16, 32};
  RoughSpec spec;
  spec.seed = 3;
  const SlopeReport rough = initial_mollified_growth(rough_spectral_data(g, spec), 0.95, 4.0, N);
  for (std::size_t i = 1; i < N.size(); ++i) CHECK(rough.values[i] > rough.values[i - 1]);
  CHECK(rough.slope > 0.0);
  CHECK(rough.reference == doctest::Approx(0.2));
  const SlopeReport flat = initial_mollified_growth(band_limited_data(g, 1.0, 4.0), 0.95, 4.0, N);
  CHECK(flat.slope == 0.0);
  CHECK(flat.within_bound);
}

TEST_CASE("almost conservation sweep bookkeeping") {
  RadialGrid g(30.0, 256);
  const State d = gaussian_data(g, 1.0);
  EvolutionConfig c;
  c.dt = 0.02;
  c.T = 1.0;
  c.sample_stride = 5;
  const std::vector<double> N{2, 4, 8};
  const ConservationSweep one = almost_conservation_sweep(d, 0.95, N, c, 1);
  const ConservationSweep two = almost_conservation_sweep(d, 0.95, N, c, 2);
  CHECK(one.delta.values == two.delta.values);
  CHECK(one.initial.size() == 3);
  CHECK(one.predicted_slope == doctest::Approx(-0.5));
  CHECK(one.energy_drift >= 0.0);
  for (double v : one.delta.values) CHECK(v >= 0.0);
}

TEST_CASE("L^{p+2} partition") {
  RadialGrid g(30.0, 256);
  const State d = gaussian_data(g, 1.0);
  EvolutionConfig c;
  c.dt = 0.02;
  c.T = 2.0;
  c.sample_stride = 2;
  const Trajectory tr = evolve(d, c);
  const IMethodParams prm{4.0, 0.95, 4.0};
  const auto coarse = lp2_partition(tr, prm, 1e6);
  REQUIRE(coarse.size() == 2);
  CHECK(coarse.front() == 0.0);
  CHECK(coarse.back() == doctest::Approx(2.0));
  const auto fine = lp2_partition(tr, prm, 0.5);
  CHECK(fine.size() > coarse.size());
  for (std::size_t i = 1; i < fine.size(); ++i) CHECK(fine[i] > fine[i - 1]);
  CHECK(fine.back() == doctest::Approx(2.0));
  CHECK_THROWS(lp2_partition(tr, prm, 0.0));
}
