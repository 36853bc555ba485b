#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nlkg/grid.hpp"

namespace nlkg {

/// Radial Fourier transform through a type-I sine transform of w_j = r_j f(r_j).
SpectralField to_spectral(const RadialField& f);

/// Exact inverse of to_spectral (up to round-off).
RadialField to_physical(const SpectralField& F);

namespace transform {

/// Unnormalised DST-I: out_k = 2 sum_j in_j sin(pi (j+1)(k+1) / (n+1)).
/// Backed by FFTW (RODFT00); plans are cached per length and shared between threads.
void dst1(std::span<const double> in, std::span<double> out);

/// Unnormalised DCT-I on n+2 points: out_k = in_0 + (-1)^k in_{n+1} + 2 sum_{j=1}^{n} in_j cos(pi j k / (n+1)).
void dct1(std::span<const double> in, std::span<double> out);

/// Samples of the sine-series interpolant with continuum coefficients `coeffs`
/// (domain radius R) at the m interior nodes of spacing R/(m+1). Modes beyond
/// coeffs.size() are zero, so m > coeffs.size() gives spectral zero padding.
std::vector<double> synthesize(double radius, std::span<const double> coeffs, std::size_t m);

/// Continuum coefficients of the samples `values` (m nodes, spacing R/(m+1)),
/// truncated to the first `keep` modes.
std::vector<double> analyze(double radius, std::span<const double> values, std::size_t keep);

/// Node count of a grid refined by `pad` with the same radius: pad*(n+1) - 1.
std::size_t padded_size(std::size_t n, std::size_t pad);

/// Quadratic extrapolation in r^2 to r = 0 from the first three samples of an
/// even function sampled at r = h, 2h, 3h.
double extrapolate_to_origin(std::span<const double> f);

}  // namespace transform

}  // namespace nlkg
