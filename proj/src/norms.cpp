#include "nlkg/norms.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "nlkg/kernels.hpp"
#include "nlkg/transform.hpp"

namespace nlkg {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

// Spectral sum (1 / (2 pi R)) sum_k weight(rho_k) rho_k^2 c_k^2, the discrete
// counterpart of (2 pi)^-3 int weight |f^|^2 dxi.
template <class Weight>
double spectral_energy(const SpectralField& F, Weight&& weight) {
  double s = 0.0;
  for (std::size_t k = 0; k < F.size(); ++k) {
    const double rho = F.grid.frequency(k);
    s += weight(rho) * rho * rho * F[k] * F[k];
  }
  return s / (2.0 * std::numbers::pi * F.grid.radius());
}

// Leading endpoint correction at r = 0 for 4 pi int r^k g dr with g even.
double origin_correction(double g0, double dr, int r_power) {
  if (r_power == 0) return 0.5 * dr * g0;
  if (r_power == 1) return dr * dr / 12.0 * g0;
  return 0.0;
}

}  // namespace

double lebesgue_norm(const RadialField& f, double q) {
  if (std::isinf(q)) return kernels::max_abs(f.values);
  if (!(q >= 1.0)) throw std::invalid_argument("Lebesgue exponent must be >= 1");
  const double s = kFourPi * f.grid.dr() * kernels::radial_moment(f.values, f.grid.dr(), 2, q);
  if (s == 0.0) return 0.0;
  return q == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / q);
}

double sobolev_norm(const SpectralField& F, double sigma) {
  if (sigma == 0.0) return std::sqrt(spectral_energy(F, [](double) { return 1.0; }));
  return std::sqrt(spectral_energy(F, [sigma](double rho) { return std::pow(1.0 + rho, 2.0 * sigma); }));
}

double sobolev_norm(const RadialField& f, double sigma) { return sobolev_norm(to_spectral(f), sigma); }

double gradient_norm_squared(const SpectralField& F) {
  return spectral_energy(F, [](double rho) { return rho * rho; });
}

double h1_norm(const RadialField& f) {
  const SpectralField F = to_spectral(f);
  return std::sqrt(spectral_energy(F, [](double rho) { return 1.0 + rho * rho; }));
}

RadialField radial_derivative(const RadialField& f) {
  const RadialGrid& g = f.grid;
  const std::size_t n = g.size();
  const SpectralField F = to_spectral(f);
  // w'(r) = (1 / (2 pi R)) sum_k rho_k^2 c_k cos(rho_k r), evaluated at r_j by DCT-I on n+2 points.
  std::vector<double> x(n + 2, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double rho = g.frequency(k);
    x[k + 1] = rho * rho * F[k];
  }
  std::vector<double> y(n + 2);
  transform::dct1(x, y);
  const double scale = 1.0 / (4.0 * std::numbers::pi * g.radius());
  RadialField out(g);
  for (std::size_t j = 0; j < n; ++j) {
    const double r = g.node(j);
    const double w = r * f[j];
    const double wp = scale * y[j + 1];
    out[j] = (wp * r - w) / (r * r);
  }
  return out;
}

double value_at_origin(const RadialField& f) { return transform::extrapolate_to_origin(f.values); }

double radial_integral(const RadialField& f, const RadialField& g, int r_power) {
  require_same_grid(f.grid, g.grid);
  const double dr = f.grid.dr();
  double s = dr * kernels::radial_product(f.values, g.values, dr, r_power);
  if (r_power <= 1) {
    const double g0 = transform::extrapolate_to_origin(std::vector<double>{f[0] * g[0], f[1] * g[1], f[2] * g[2]});
    s += origin_correction(g0, dr, r_power);
  }
  return kFourPi * s;
}

double radial_power_integral(const RadialField& f, double exponent, int r_power) {
  const double dr = f.grid.dr();
  double s = dr * kernels::radial_moment(f.values, dr, r_power, exponent);
  if (r_power <= 1) {
    const double f0 = std::fabs(value_at_origin(f));
    s += origin_correction(f0 == 0.0 ? 0.0 : std::pow(f0, exponent), dr, r_power);
  }
  return kFourPi * s;
}

}  // namespace nlkg
