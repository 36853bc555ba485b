#pragma once

#include <cstdint>
#include <optional>

#include "nlkg/propagator.hpp"

namespace nlkg {

/// u = A exp(-r^2 / (2 width^2)), ut = 0.
State gaussian_data(const RadialGrid& g, double amplitude, double width = 1.0);

/// Gaussian spectrum A exp(-rho^2 / 2) cut off smoothly so that every mode at or
/// above `band` is exactly zero (phi(2 rho / band)). ut = 0.
State band_limited_data(const RadialGrid& g, double amplitude, double band);

/// Flat spectrum u^(rho_k) = A: the band-limited point source at the origin. ut = 0.
State flat_spectrum_data(const RadialGrid& g, double amplitude = 1.0);

struct RoughSpec {
  double amplitude = 1.0;
  /// Decay rate of the spectrum: u^(rho_k) ~ (1 + rho_k)^(-slope) g_k.
  /// slope = s + 3/2 puts the data in H^s up to a logarithm and outside H^1.
  double slope = 2.45;
  std::uint64_t seed = 1;
  /// Radius of the smooth physical cutoff exp(-(r/L)^8); nullopt keeps the raw
  /// synthesis (which fills the whole interval).
  std::optional<double> envelope = 8.0;
};

/// Seeded rough data. g_k is a standard normal stream from mt19937_64(seed);
/// the sign convention makes the first nonzero draw positive. ut = 0.
State rough_spectral_data(const RadialGrid& g, const RoughSpec& spec);

}  // namespace nlkg
