#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nlkg/data.hpp"
#include "nlkg/morawetz.hpp"
#include "nlkg/norms.hpp"

using namespace nlkg;
using std::numbers::pi;

namespace {

// Direct O(n^2) sine sums on an m-node grid of the same radius.
std::vector<double> analyze_direct(double R, const std::vector<double>& f, std::size_t keep) {
  const std::size_t m = f.size();
  const double h = R / static_cast<double>(m + 1);
  std::vector<double> out(keep);
  for (std::size_t k = 0; k < keep; ++k) {
    const double rho = static_cast<double>(k + 1) * pi / R;
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double r = static_cast<double>(j + 1) * h;
      s += std::sin(rho * r) * r * f[j];
    }
    out[k] = 4.0 * pi / rho * s * h;
  }
  return out;
}

std::vector<double> synthesize_direct(double R, const std::vector<double>& F, std::size_t m) {
  const double h = R / static_cast<double>(m + 1);
  std::vector<double> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double r = static_cast<double>(j + 1) * h;
    double w = 0.0;
    for (std::size_t k = 0; k < F.size(); ++k) {
      const double rho = static_cast<double>(k + 1) * pi / R;
      w += rho * F[k] / (2.0 * pi * R) * std::sin(rho * r);
    }
    out[j] = w / r;
  }
  return out;
}

std::vector<double> power_on_padded(double R, const std::vector<double>& F, double p, std::size_t m) {
  std::vector<double> u = synthesize_direct(R, F, m);
  for (double& x : u) x = std::pow(std::fabs(x), p - 1) * x;
  return analyze_direct(R, u, F.size());
}

RadialField commutator_oracle(const RadialField& u, const IMethodParams& prm) {
  const RadialGrid& g = u.grid;
  const double R = g.radius();
  const std::size_t n = g.size(), m = 2 * (n + 1) - 1;
  const auto I = prm.symbol();
  std::vector<double> U = analyze_direct(R, u.values, n), IU = U;
  for (std::size_t k = 0; k < n; ++k) IU[k] *= I(g.frequency(k));
  const auto a = power_on_padded(R, IU, prm.p, m);
  auto b = power_on_padded(R, U, prm.p, m);
  for (std::size_t k = 0; k < n; ++k) b[k] = a[k] - b[k] * I(g.frequency(k));
  return RadialField(g, synthesize_direct(R, b, n));
}

State rough(const RadialGrid& g, std::uint64_t seed, double amplitude = 1.0) {
  RoughSpec spec;
  spec.seed = seed;
  spec.amplitude = amplitude;
  return rough_spectral_data(g, spec);
}

}  // namespace

TEST_CASE("commutator vanishes when I is the identity on the band") {
  RadialGrid g(30.0, 256);
  const State d = rough(g, 2, 3.0);
  const RadialField G = commutator(d, {32.0, 0.95, 4.0});
  double m = 0.0;
  for (double x : G.values) m = std::max(m, std::fabs(x));
  CHECK(m <= 1e-14);
}

TEST_CASE("commutator against a direct-sum oracle") {
  RadialGrid g(16.0, 128);
  const State d = rough(g, 5, 30.0);
  for (double N : {1.0, 2.0}) {
    const IMethodParams prm{N, 0.9, 4.0};
    const RadialField G = commutator(d, prm, 2);
    const RadialField O = commutator_oracle(d.u, prm);
    double err = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      err = std::max(err, std::fabs(G[j] - O[j]));
      scale = std::max(scale, std::fabs(O[j]));
    }
    CHECK(scale > 1e-3);
    CHECK(err <= 1e-8 * std::max(1.0, scale));
  }
}

TEST_CASE("zero trajectory has a zero budget") {
  RadialGrid g(30.0, 256);
  EvolutionConfig c;
  c.dt = 0.05;
  c.T = 1.0;
  const Trajectory tr = evolve(State(g), c);
  const MorawetzBudget b = morawetz_budget(tr, {4.0, 0.95, 4.0});
  CHECK(b.weighted_potential == 0.0);
  CHECK(b.origin_term == 0.0);
  CHECK(b.R1 == 0.0);
  CHECK(b.R2 == 0.0);
  CHECK(b.residual == 0.0);
  CHECK(morawetz_strauss_check(b, 0.0).ratio == 0.0);
}

TEST_CASE("budget on a smooth run") {
  RadialGrid g(30.0, 512);
  const State d = gaussian_data(g, 1.5);
  EvolutionConfig c;
  c.dt = 0.01;
  c.T = 2.0;
  c.sample_stride = 5;
  const Trajectory tr = evolve(d, c);
  const MorawetzBudget b = morawetz_budget(tr, {2.0, 0.95, 4.0});
  CHECK(b.angular_term == 0.0);
  CHECK(b.weighted_potential > 0.0);
  CHECK(b.origin_term > 0.0);
  CHECK(b.residual <= 1e-2 * b.weighted_potential);
  CHECK_FALSE(b.warning.has_value());
  REQUIRE(b.weighted_potential_cum.size() == tr.size());
  for (std::size_t i = 1; i < b.weighted_potential_cum.size(); ++i) {
    CHECK(b.weighted_potential_cum[i] >= b.weighted_potential_cum[i - 1]);
  }
  CHECK(b.weighted_potential_cum.back() == doctest::Approx(b.weighted_potential));

  MorawetzAccumulator acc({2.0, 0.95, 4.0}, 2);
  for (const State& st : tr.states) acc.add(st);
  CHECK(acc.budget().residual == doctest::Approx(b.residual).epsilon(1e-12));
  const auto [r1, r2] = r1_r2_integrals(tr, {2.0, 0.95, 4.0});
  CHECK(r1 == doctest::Approx(b.R1).epsilon(1e-12));
  CHECK(r2 == doctest::Approx(b.R2).epsilon(1e-12));

  const MorawetzRatio ratio = morawetz_strauss_check(b, energy(d, 4.0));
  CHECK(ratio.ratio > 0.0);
  CHECK(ratio.ratio == doctest::Approx(ratio.numerator / ratio.denominator));
}

TEST_CASE("Morawetz-Strauss ratio edge cases") {
  MorawetzBudget b;
  CHECK(morawetz_strauss_check(b, 0.0).ratio == 0.0);
  b.weighted_potential = 1.0;
  CHECK_THROWS_AS(morawetz_strauss_check(b, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(morawetz_strauss_check(b, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(morawetz_strauss_check(b, NAN), std::invalid_argument);
}

TEST_CASE("radial Sobolev ratio") {
  const double bound = 1.0 / std::sqrt(4.0 * pi);
  RadialGrid g(30.0, 1024);
  const State d = gaussian_data(g, 1.0);
  const double a = radial_sobolev_ratio(d.u);
  CHECK(a > 0.0);
  CHECK(a <= bound);
  CHECK(radial_sobolev_ratio(3.0 * d.u) == doctest::Approx(a).epsilon(1e-14));
  for (std::uint64_t seed = 1; seed <= 5; ++seed) CHECK(radial_sobolev_ratio(rough(g, seed).u) <= bound + 1e-3);
  CHECK_THROWS_AS(radial_sobolev_ratio(RadialField(g)), std::invalid_argument);
}
