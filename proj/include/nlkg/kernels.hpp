#pragma once

// Data-parallel inner loops used by the transforms, the nonlinearity and the
// radial quadratures. The default namespace holds the OpenMP kernels; the
// `serial` namespace keeps straightforward reference loops that the tests and
// the benchmark compare against.
//
// Reductions are split into fixed-size chunks whose partial sums are combined
// in chunk order, so results do not depend on the number of threads.

#include <cstddef>
#include <span>

namespace nlkg::kernels {

inline constexpr std::size_t kReductionChunk = 2048;

/// out_j = |u_j|^(p-1) u_j.
void power_nonlinearity(std::span<const double> u, double p, std::span<double> out);

/// v_j *= factors_j.
void multiply(std::span<double> v, std::span<const double> factors);

/// sum_j r_j^k |f_j|^e with r_j = (j+1) dr.
double radial_moment(std::span<const double> f, double dr, int r_power, double exponent);

/// sum_j r_j^k a_j b_j with r_j = (j+1) dr.
double radial_product(std::span<const double> a, std::span<const double> b, double dr, int r_power);

double max_abs(std::span<const double> f);

/// Number of threads the kernels will use in the calling context.
int active_threads();

namespace serial {

void power_nonlinearity(std::span<const double> u, double p, std::span<double> out);
void multiply(std::span<double> v, std::span<const double> factors);
double radial_moment(std::span<const double> f, double dr, int r_power, double exponent);
double radial_product(std::span<const double> a, std::span<const double> b, double dr, int r_power);
double max_abs(std::span<const double> f);

}  // namespace serial

}  // namespace nlkg::kernels
