#pragma once

#include <functional>
#include <string>

#include "nlkg/grid.hpp"

namespace nlkg {

/// A real Fourier multiplier rho -> sigma(rho) acting diagonally on radial spectra.
class MultiplierSymbol {
 public:
  MultiplierSymbol(std::string name, std::function<double(double)> fn)
      : name_(std::move(name)), fn_(std::move(fn)) {}

  double operator()(double rho) const { return fn_(rho); }
  const std::string& name() const { return name_; }

  /// (1 + rho)^sigma, the weight used by every H^sigma norm.
  static MultiplierSymbol bracket_power(double sigma);
  /// sqrt(1 + rho^2), the Klein-Gordon dispersion relation.
  static MultiplierSymbol dispersion();
  /// m(rho) = eta(rho / N): 1 below N, (N/rho)^(1-s) above 2N.
  static MultiplierSymbol i_symbol(double N, double s);

  static MultiplierSymbol lp_phi(double M);
  static MultiplierSymbol lp_psi(double M);
  static MultiplierSymbol lp_leq(double M);
  static MultiplierSymbol lp_gt(double M);
  static MultiplierSymbol lp_ll(double M);
  static MultiplierSymbol lp_gtrsim(double M);

  MultiplierSymbol operator*(const MultiplierSymbol& o) const;

 private:
  std::string name_;
  std::function<double(double)> fn_;
};

/// Quintic smoothstep 6x^5 - 15x^4 + 10x^3 clamped to [0, 1].
double smoothstep(double x);

/// Profile of eta on (0, inf); the transition on (1, 2) is a C^1 cubic Hermite
/// curve in (log x, log eta).
double eta_profile(double x, double s);

/// phi(x): 1 on [0, 1], 0 on [2, inf), 1 - smoothstep(x - 1) between.
double lp_bump(double x);

/// Throws std::domain_error when sigma is not finite on [rho_1, rho_n].
RadialField apply_multiplier(const RadialField& f, const MultiplierSymbol& sigma);
SpectralField apply_multiplier(const SpectralField& F, const MultiplierSymbol& sigma);

enum class LpBand { Leq, Eq, Gt, Ll, Gtrsim };

MultiplierSymbol lp_symbol(LpBand band, double M);

/// Littlewood-Paley projection. M must be dyadic (a power of two, possibly < 1).
RadialField lp_project(const RadialField& f, LpBand band, double M);

/// True when x = 2^k for an integer k.
bool is_dyadic(double x);

}  // namespace nlkg
