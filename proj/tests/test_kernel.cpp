#include <doctest.h>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "nlkg/data.hpp"
#include "nlkg/kernel.hpp"
#include "nlkg/multiplier.hpp"

using namespace nlkg;
using std::numbers::pi;

namespace {

double psi(double x) { return lp_bump(x) - lp_bump(2.0 * x); }

// int over R^3 of psi(|xi|/M)^2 by a tensor Gauss rule on the positive octant.
double origin_oracle(double M) {
  using Rule = boost::math::quadrature::gauss<double, 10>;
  const std::size_t panels = 20;
  const double L = 2.0 * M, h = L / panels;
  std::vector<double> z, w;
  for (std::size_t p = 0; p < panels; ++p) {
    const double c = (p + 0.5) * h;
    for (std::size_t i = 0; i < Rule::abscissa().size(); ++i) {
      const double a = Rule::abscissa()[i], wt = Rule::weights()[i];
      z.push_back(c + 0.5 * h * a);
      w.push_back(0.5 * h * wt);
      if (a != 0.0) {
        z.push_back(c - 0.5 * h * a);
        w.push_back(0.5 * h * wt);
      }
    }
  }
  double s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = 0; j < z.size(); ++j) {
      const double xy = z[i] * z[i] + z[j] * z[j];
      if (xy >= L * L) continue;
      for (std::size_t k = 0; k < z.size(); ++k) {
        const double v = psi(std::sqrt(xy + z[k] * z[k]) / M);
        s += w[i] * w[j] * w[k] * v * v;
      }
    }
  }
  return 8.0 * s;
}

std::complex<double> kernel_oracle(double M, double t, double x) {
  auto f = [&](double rho) {
    const double a = psi(rho / M);
    return std::complex<double>(a * a * std::sin(rho * x) * rho) * std::exp(std::complex<double>(0, t * std::sqrt(1 + rho * rho)));
  };
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  auto re = [&](double r) { return f(r).real(); };
  auto im = [&](double r) { return f(r).imag(); };
  double out_re = 0, out_im = 0;
  for (auto [lo, hi] : {std::pair{M / 2, M}, std::pair{M, 2 * M}}) {
    out_re += GK::integrate(re, lo, hi, 20, 1e-14);
    out_im += GK::integrate(im, lo, hi, 20, 1e-14);
  }
  return 4.0 * pi / x * std::complex<double>(out_re, out_im);
}

}  // namespace

TEST_CASE("kernel at the origin") {
  for (double M : {1.0, 2.0}) {
    const double oracle = origin_oracle(M);
    CHECK(std::fabs(kernel_origin_value(M) - oracle) <= 1e-6 * oracle);
  }
  for (double M : {4.0, 8.0, 16.0}) {
    CHECK(kernel_origin_value(2 * M) == doctest::Approx(8.0 * kernel_origin_value(M)).epsilon(1e-14));
    CHECK(std::abs(kernel_value(M, 0.0, 0.0) - kernel_origin_value(M)) <= 1e-12 * kernel_origin_value(M));
  }
  CHECK_THROWS(kernel_origin_value(3.0));
}

TEST_CASE("kernel values against adaptive quadrature") {
  for (double M : {2.0, 8.0}) {
    for (auto [t, x] : {std::pair{0.5, 0.3}, std::pair{3.0, 2.0}, std::pair{-2.0, 1.0}, std::pair{6.0, 5.9}}) {
      const auto k = kernel_value(M, t, x), o = kernel_oracle(M, t, x);
      CHECK(std::abs(k - o) <= 1e-8 * std::max(1.0, std::abs(o)));
    }
  }
}

TEST_CASE("kernel conjugate symmetry in time") {
  for (double t : {0.7, 5.0, 20.0}) {
    for (double x : {0.0, 0.1, 3.0, 19.5}) {
      const auto a = kernel_value(16.0, t, x), b = kernel_value(16.0, -t, x);
      CHECK(std::abs(a - std::conj(b)) <= 1e-12 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST_CASE("low-frequency kernel") {
  CHECK(std::abs(kernel_value_low(0.0, 0.0)) > 0.0);
  CHECK(std::abs(kernel_value_low(1.0, 0.5) - std::conj(kernel_value_low(-1.0, 0.5))) <= 1e-12);
}

TEST_CASE("probe layout") {
  const KernelProbe pr = probe_kernel(8.0, {0.0, 1.0}, {0.0, 0.5, 1.0});
  REQUIRE(pr.values.size() == 6);
  CHECK(pr.values[4] == kernel_value(8.0, 1.0, 0.5));
}

TEST_CASE("sup envelope decays") {
  const auto [s1, x1] = kernel_sup(16.0, 2.0);
  const auto [s2, x2] = kernel_sup(16.0, 6.0);
  CHECK(s2 < s1);
  CHECK(x2 >= 0.0);
  CHECK(x2 <= 8.0);
  CHECK(s1 >= std::abs(kernel_value(16.0, 2.0, x1)) * (1 - 1e-12));
  CHECK_THROWS_AS(decay_envelope_fit(16.0, 0.01, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(decay_envelope_fit(16.0, 1.0, 4.0, 2), std::invalid_argument);
}

TEST_CASE("energy pair Strichartz ratio is one") {
  RadialGrid g(40.0, 2048);
  const State f = flat_spectrum_data(g);
  const auto pair = make_admissible_pair(std::numeric_limits<double>::infinity(), 2.0);
  const StrichartzProbe pr = strichartz_probe(8.0, pair, f.u, 8.0, 65);
  CHECK(pr.ratio == doctest::Approx(1.0).epsilon(1e-10));
  const StrichartzProbe zero = strichartz_probe(8.0, pair, RadialField(g), 8.0, 65);
  CHECK(zero.norm == 0.0);
  CHECK(zero.ratio == 0.0);
  CHECK_THROWS_AS(strichartz_probe(8.0, {3.0, 2.0, 0.0}, f.u), std::invalid_argument);
}
