#include "nlkg/data.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "nlkg/multiplier.hpp"
#include "nlkg/transform.hpp"

namespace nlkg {

State gaussian_data(const RadialGrid& g, double amplitude, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian width must be positive");
  State st(g);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double r = g.node(j) / width;
    st.u[j] = amplitude * std::exp(-0.5 * r * r);
  }
  return st;
}

State band_limited_data(const RadialGrid& g, double amplitude, double band) {
  if (!(band > 0.0)) throw std::invalid_argument("band must be positive");
  SpectralField U(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double rho = g.frequency(k);
    // Continuum transform of exp(-r^2/2) is (2 pi)^(3/2) exp(-rho^2/2).
    U[k] = amplitude * std::pow(2.0 * std::numbers::pi, 1.5) * std::exp(-0.5 * rho * rho) * lp_bump(2.0 * rho / band);
  }
  State st(g);
  st.u = to_physical(U);
  return st;
}

State flat_spectrum_data(const RadialGrid& g, double amplitude) {
  State st(g);
  st.u = to_physical(SpectralField(g, std::vector<double>(g.size(), amplitude)));
  return st;
}

State rough_spectral_data(const RadialGrid& g, const RoughSpec& spec) {
  if (!(spec.slope > 0.0)) throw std::invalid_argument("data.spectral_slope must be positive");
  if (spec.envelope && !(*spec.envelope > 0.0)) throw std::invalid_argument("data.envelope must be positive");
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralField U(g);
  double sign = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    double gk = normal(rng);
    if (sign == 0.0 && gk != 0.0) sign = gk > 0.0 ? 1.0 : -1.0;
    U[k] = spec.amplitude * sign * gk * std::pow(1.0 + g.frequency(k), -spec.slope);
  }
  State st(g);
  st.u = to_physical(U);
  if (spec.envelope) {
    const double L = *spec.envelope;
    for (std::size_t j = 0; j < g.size(); ++j) st.u[j] *= std::exp(-std::pow(g.node(j) / L, 8));
  }
  return st;
}

}  // namespace nlkg
