#include "nlkg/multiplier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "nlkg/kernels.hpp"
#include "nlkg/transform.hpp"

namespace nlkg {

double smoothstep(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

double eta_profile(double x, double s) {
  if (x <= 1.0) return 1.0;
  const double a = 1.0 - s;
  if (x >= 2.0) return std::pow(x, -a);
  // Hermite on tau = log2(x) in [0, 1]: y(0) = 0, y'(0) = 0, y(1) = -a ln2,
  // y'(1) = -a ln2 (the slope of the power law), giving y = -a ln2 (2 tau^2 - tau^3).
  const double tau = std::log2(x);
  const double y = -a * std::numbers::ln2 * tau * tau * (2.0 - tau);
  return std::exp(y);
}

double lp_bump(double x) { return 1.0 - smoothstep(x - 1.0); }

bool is_dyadic(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) return false;
  int e = 0;
  const double m = std::frexp(x, &e);
  return m == 0.5;
}

MultiplierSymbol MultiplierSymbol::bracket_power(double sigma) {
  if (sigma == 0.0) return {"bracket^0", [](double) { return 1.0; }};
  return {"bracket^" + std::to_string(sigma), [sigma](double rho) { return std::pow(1.0 + rho, sigma); }};
}

MultiplierSymbol MultiplierSymbol::dispersion() {
  return {"dispersion", [](double rho) { return std::sqrt(1.0 + rho * rho); }};
}

MultiplierSymbol MultiplierSymbol::i_symbol(double N, double s) {
  if (!(N > 0.0)) throw std::invalid_argument("I-symbol needs N > 0");
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("I-symbol needs 0 < s < 1");
  return {"I(N=" + std::to_string(N) + ")", [N, s](double rho) { return eta_profile(rho / N, s); }};
}

MultiplierSymbol MultiplierSymbol::lp_phi(double M) {
  return {"phi", [M](double rho) { return lp_bump(rho / M); }};
}

MultiplierSymbol MultiplierSymbol::lp_psi(double M) {
  return {"psi", [M](double rho) { return lp_bump(rho / M) - lp_bump(2.0 * rho / M); }};
}

MultiplierSymbol MultiplierSymbol::lp_leq(double M) { return lp_phi(M); }

MultiplierSymbol MultiplierSymbol::lp_gt(double M) {
  return {"1-phi", [M](double rho) { return 1.0 - lp_bump(rho / M); }};
}

MultiplierSymbol MultiplierSymbol::lp_ll(double M) { return lp_leq(M / 128.0); }

MultiplierSymbol MultiplierSymbol::lp_gtrsim(double M) { return lp_gt(M / 128.0); }

MultiplierSymbol MultiplierSymbol::operator*(const MultiplierSymbol& o) const {
  return {name_ + "*" + o.name_, [a = fn_, b = o.fn_](double rho) { return a(rho) * b(rho); }};
}

SpectralField apply_multiplier(const SpectralField& F, const MultiplierSymbol& sigma) {
  std::vector<double> factors(F.size());
  for (std::size_t k = 0; k < F.size(); ++k) {
    factors[k] = sigma(F.grid.frequency(k));
    if (!std::isfinite(factors[k])) {
      throw std::domain_error("multiplier " + sigma.name() + " is not finite at rho = " +
                              std::to_string(F.grid.frequency(k)));
    }
  }
  SpectralField out = F;
  kernels::multiply(out.coeffs, factors);
  return out;
}

RadialField apply_multiplier(const RadialField& f, const MultiplierSymbol& sigma) {
  bool identity = true;
  for (std::size_t k = 0; k < f.size() && identity; ++k) {
    const double v = sigma(f.grid.frequency(k));
    if (!std::isfinite(v)) {
      throw std::domain_error("multiplier " + sigma.name() + " is not finite at rho = " +
                              std::to_string(f.grid.frequency(k)));
    }
    identity = v == 1.0;
  }
  if (identity) return f;
  return to_physical(apply_multiplier(to_spectral(f), sigma));
}

MultiplierSymbol lp_symbol(LpBand band, double M) {
  switch (band) {
    case LpBand::Leq: return MultiplierSymbol::lp_leq(M);
    case LpBand::Eq: return MultiplierSymbol::lp_psi(M);
    case LpBand::Gt: return MultiplierSymbol::lp_gt(M);
    case LpBand::Ll: return MultiplierSymbol::lp_ll(M);
    case LpBand::Gtrsim: return MultiplierSymbol::lp_gtrsim(M);
  }
  throw std::invalid_argument("unknown Littlewood-Paley band");
}

RadialField lp_project(const RadialField& f, LpBand band, double M) {
  if (!is_dyadic(M)) throw std::invalid_argument("Littlewood-Paley frequency must be dyadic");
  return apply_multiplier(f, lp_symbol(band, M));
}

}  // namespace nlkg
