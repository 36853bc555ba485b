#include <doctest.h>

#include <cmath>

#include "nlkg/data.hpp"
#include "nlkg/functionals.hpp"
#include "nlkg/scattering.hpp"

using namespace nlkg;

namespace {

double max_diff(const State& a, const State& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.u.size(); ++j) {
    m = std::max({m, std::fabs(a.u[j] - b.u[j]), std::fabs(a.ut[j] - b.ut[j])});
  }
  return m;
}

Trajectory run(const State& d, double T, bool nonlinear) {
  EvolutionConfig c;
  c.dt = 0.01;
  c.T = T;
  c.sample_stride = 10;
  c.nonlinear = nonlinear;
  return evolve(d, c);
}

}  // namespace

TEST_CASE("pullback of a linear run is constant") {
  RadialGrid g(40.0, 512);
  const State d = gaussian_data(g, 1.0);
  const Trajectory tr = run(d, 8.0, false);
  for (const State& st : tr.states) {
    const State back = pullback(st);
    CHECK(back.t == 0.0);
    CHECK(max_diff(back, d) <= 1e-10);
  }
  const ScatteringState sc = extract_scattering_state(tr);
  CHECK(max_diff(sc.as_state(), d) <= 1e-10);
  CHECK(scattering_error(tr, sc, 4.0, 0.95) <= 1e-10);
  const CauchyReport rep = cauchy_report(tr, 0.95);
  for (double x : rep.diffs) CHECK(x <= 1e-10);
  CHECK_FALSE(rep.warning.has_value());
}

TEST_CASE("pullback and the Duhamel tail") {
  RadialGrid g(40.0, 512);
  const State d = gaussian_data(g, 1.5);
  const Trajectory tr = run(d, 4.0, true);
  for (double t : {1.0, 2.5, 4.0}) {
    const State lhs = pullback(tr.at(t));
    State rhs = inverse_free_flow(duhamel_tail(tr, t), t);
    rhs.u = d.u - rhs.u;
    rhs.ut = d.ut - rhs.ut;
    CHECK(max_diff(lhs, rhs) <= 1e-10);
  }
}

TEST_CASE("Cauchy report on a small nonlinear run") {
  RadialGrid g(64.0, 512);
  const Trajectory tr = run(gaussian_data(g, 0.5), 16.0, true);
  REQUIRE(tr.clean());
  const auto cp = default_checkpoints(tr);
  REQUIRE(cp.size() == 4);
  CHECK(cp[0] == doctest::Approx(2.0));
  CHECK(cp[3] == doctest::Approx(16.0));
  const CauchyReport rep = cauchy_report(tr, 0.95);
  REQUIRE(rep.diffs.size() == 3);
  CHECK(rep.diffs[0] > rep.diffs[1]);
  CHECK(rep.diffs[1] > rep.diffs[2]);
  CHECK(rep.final_error == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
}

TEST_CASE("checkpoint validation") {
  RadialGrid g(30.0, 256);
  const Trajectory tr = run(gaussian_data(g, 0.5), 1.0, true);
  CHECK_THROWS_AS(cauchy_report(tr, 0.95, {0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(cauchy_report(tr, 0.95, {0.2, 0.55, 1.0}), std::out_of_range);
  CHECK_NOTHROW(cauchy_report(tr, 0.95, {0.2, 0.5, 1.0}));
}

TEST_CASE("guard breach is reported") {
  RadialGrid g(6.0, 256);
  const Trajectory tr = run(gaussian_data(g, 0.5), 8.0, true);
  REQUIRE_FALSE(tr.clean());
  CHECK(cauchy_report(tr, 0.95).warning.has_value());
  CHECK(extract_scattering_state(tr).warning.has_value());
}
