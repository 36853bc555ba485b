#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "nlkg/exponents.hpp"
#include "nlkg/grid.hpp"

namespace nlkg {

class QuadratureFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// K_M(t, x) = int |psi(xi/M)|^2 e^{i t <xi>} e^{i xi.x} dxi with <xi> = sqrt(1 + |xi|^2),
/// reduced to (4 pi/|x|) int_0^inf |psi(rho/M)|^2 sin(rho |x|) rho e^{i t <rho>} drho.
/// M must be dyadic. Throws QuadratureFailure when the panel budget runs out.
std::complex<double> kernel_value(double M, double t, double x);

/// Same with |phi(xi)|^2 in place of |psi(xi/M)|^2.
std::complex<double> kernel_value_low(double t, double x);

/// int |psi(xi/M)|^2 dxi = M^3 * 4 pi int |psi(rho)|^2 rho^2 drho.
double kernel_origin_value(double M);

struct KernelProbe {
  double M = 0.0;
  std::vector<double> t_samples;
  std::vector<double> x_samples;
  /// values[i * x_samples.size() + j] = K_M(t_i, x_j).
  std::vector<std::complex<double>> values;
};

KernelProbe probe_kernel(double M, const std::vector<double>& t_samples, const std::vector<double>& x_samples);

/// sup_x |K_M(t, x)| over x in [0, |t| + 2], sampled at spacing 1/(8M) and refined by
/// golden-section search around the best sample. Returns {sup, argmax}.
std::pair<double, double> kernel_sup(double M, double t);

struct EnvelopeFit {
  double M = 0.0;
  std::vector<double> t;
  std::vector<double> sup;
  std::vector<double> argmax;
  /// sup ~ amplitude * t^exponent (least squares in log-log).
  double amplitude = 0.0;
  double exponent = 0.0;
  /// exponent in [-1.2, -0.8], the d = 3 intermediate-regime window around -1.
  bool within_bound = false;
};

/// Log-spaced t in [t_lo, t_hi], which must lie inside [2/M, M/2]; at least 3 samples.
EnvelopeFit decay_envelope_fit(double M, double t_lo, double t_hi, std::size_t samples = 12);
/// Window [16/M, M/2] (t_lo clamped to [2/M, M/4] for small M): below M t ~ 10 the supremum still sits at the origin, where
/// the phase has no stationary point and the decay is faster than the cone rate.
EnvelopeFit decay_envelope_fit(double M);

struct StrichartzProbe {
  double M = 0.0;
  AdmissiblePair pair{};
  double T = 0.0;
  std::size_t samples = 0;
  double norm = 0.0;     // ||e^{it<D>} P_M f||_{L^q([0,T]) L^r}
  double l2 = 0.0;       // ||P_M f||_{L^2}
  double ratio = 0.0;    // norm / (M^m l2)
};

/// Free evolution of P_M f, with the complex flow realized through its real and
/// imaginary parts cos(t<D>) P_M f and sin(t<D>) P_M f. T <= 0 selects T = M;
/// samples = 0 picks max(200, 4 M T) + 1 equispaced instants.
StrichartzProbe strichartz_probe(double M, const AdmissiblePair& pair, const RadialField& f, double T = 0.0,
                                 std::size_t samples = 0);

}  // namespace nlkg
