#pragma once

#include "nlkg/grid.hpp"

namespace nlkg {

/// (4 pi int_0^R |f|^q r^2 dr)^(1/q) by the composite trapezoid rule; q = inf gives max |f|.
double lebesgue_norm(const RadialField& f, double q);

/// ||<D>^sigma f||_{L^2} with <D> = (1 + |xi|), evaluated by discrete Plancherel.
double sobolev_norm(const RadialField& f, double sigma);
double sobolev_norm(const SpectralField& F, double sigma);

/// ||grad f||_{L^2}^2 = (2 pi)^-3 int |xi|^2 |f^|^2 dxi on the resolved band.
double gradient_norm_squared(const SpectralField& F);

/// Standard H^1 norm (int |grad f|^2 + |f|^2)^(1/2), i.e. weight sqrt(1 + rho^2).
double h1_norm(const RadialField& f);

/// d/dr u from the cosine series of w' with w = r u.
RadialField radial_derivative(const RadialField& f);

/// u(0) = lim w(r)/r, by quadratic extrapolation in r^2 from the three innermost nodes.
double value_at_origin(const RadialField& f);

/// 4 pi int_0^R f g r^k dr. For k = 1 (the 1/|x| weight) the integrand is odd at the
/// origin and the trapezoid sum receives the leading Euler-Maclaurin endpoint term.
double radial_integral(const RadialField& f, const RadialField& g, int r_power);

/// 4 pi int_0^R |f|^e r^k dr, with the same endpoint treatment as radial_integral.
double radial_power_integral(const RadialField& f, double exponent, int r_power);

}  // namespace nlkg
