#include "nlkg/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace nlkg::kernels {

namespace {

inline double abs_power(double x, double e) {
  const double a = std::fabs(x);
  if (e == 2.0) return a * a;
  if (e == 1.0) return a;
  return a == 0.0 ? 0.0 : std::pow(a, e);
}

inline double radial_weight(std::size_t j, double dr, int k) {
  const double r = static_cast<double>(j + 1) * dr;
  switch (k) {
    case 0: return 1.0;
    case 1: return r;
    case 2: return r * r;
    default: return std::pow(r, k);
  }
}

inline double signed_power(double x, double p) {
  if (x == 0.0) return 0.0;
  const double a = std::fabs(x);
  // |x|^(p-1) x
  return std::copysign(std::pow(a, p), x);
}

constexpr std::size_t kMinParallel = 4096;

template <class ChunkFn>
double chunked_sum(std::size_t n, ChunkFn&& chunk_sum) {
  const std::size_t nchunks = (n + kReductionChunk - 1) / kReductionChunk;
  if (nchunks <= 1) return chunk_sum(0, n);
  std::vector<double> partial(nchunks, 0.0);
  const auto nc = static_cast<long long>(nchunks);
#pragma omp parallel for schedule(static) if (n >= kMinParallel)
  for (long long c = 0; c < nc; ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kReductionChunk;
    const std::size_t hi = std::min(n, lo + kReductionChunk);
    partial[static_cast<std::size_t>(c)] = chunk_sum(lo, hi);
  }
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("kernel operands differ in length");
}

}  // namespace

int active_threads() { return omp_in_parallel() ? 1 : omp_get_max_threads(); }

void power_nonlinearity(std::span<const double> u, double p, std::span<double> out) {
  require_same_length(u.size(), out.size());
  const auto n = static_cast<long long>(u.size());
#pragma omp parallel for schedule(static) if (u.size() >= kMinParallel)
  for (long long j = 0; j < n; ++j) out[j] = signed_power(u[j], p);
}

void multiply(std::span<double> v, std::span<const double> factors) {
  require_same_length(v.size(), factors.size());
  const auto n = static_cast<long long>(v.size());
#pragma omp parallel for schedule(static) if (v.size() >= kMinParallel)
  for (long long j = 0; j < n; ++j) v[j] *= factors[j];
}

double radial_moment(std::span<const double> f, double dr, int r_power, double exponent) {
  return chunked_sum(f.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t j = lo; j < hi; ++j) s += radial_weight(j, dr, r_power) * abs_power(f[j], exponent);
    return s;
  });
}

double radial_product(std::span<const double> a, std::span<const double> b, double dr, int r_power) {
  require_same_length(a.size(), b.size());
  return chunked_sum(a.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t j = lo; j < hi; ++j) s += radial_weight(j, dr, r_power) * a[j] * b[j];
    return s;
  });
}

double max_abs(std::span<const double> f) {
  double m = 0.0;
  const auto n = static_cast<long long>(f.size());
#pragma omp parallel for reduction(max : m) schedule(static) if (f.size() >= kMinParallel)
  for (long long j = 0; j < n; ++j) m = std::max(m, std::fabs(f[j]));
  return m;
}

namespace serial {

void power_nonlinearity(std::span<const double> u, double p, std::span<double> out) {
  require_same_length(u.size(), out.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    out[j] = u[j] == 0.0 ? 0.0 : std::pow(std::fabs(u[j]), p - 1.0) * u[j];
  }
}

void multiply(std::span<double> v, std::span<const double> factors) {
  require_same_length(v.size(), factors.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] *= factors[j];
}

double radial_moment(std::span<const double> f, double dr, int r_power, double exponent) {
  double s = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double r = static_cast<double>(j + 1) * dr;
    s += std::pow(r, r_power) * std::pow(std::fabs(f[j]), exponent);
  }
  return s;
}

double radial_product(std::span<const double> a, std::span<const double> b, double dr, int r_power) {
  require_same_length(a.size(), b.size());
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double r = static_cast<double>(j + 1) * dr;
    s += std::pow(r, r_power) * a[j] * b[j];
  }
  return s;
}

double max_abs(std::span<const double> f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::fabs(v));
  return m;
}

}  // namespace serial

}  // namespace nlkg::kernels
