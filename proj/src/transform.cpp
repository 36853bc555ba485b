#include "nlkg/transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace nlkg {

namespace transform {

namespace {

// FFTW planning is not thread-safe, execution with the new-array interface is.
// FFTW_ESTIMATE keeps plan selection deterministic across runs.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(fftw_r2r_kind kind, int n) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(static_cast<int>(kind), n);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<double> in(static_cast<std::size_t>(n)), out(static_cast<std::size_t>(n));
    fftw_plan plan = fftw_plan_r2r_1d(n, in.data(), out.data(), kind,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT);
    if (plan == nullptr) throw std::runtime_error("FFTW could not create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

void execute(fftw_r2r_kind kind, std::span<const double> in, std::span<double> out) {
  if (in.size() != out.size()) throw std::invalid_argument("transform operands differ in length");
  if (in.empty()) return;
  fftw_plan plan = PlanCache::instance().get(kind, static_cast<int>(in.size()));
  if (in.data() == out.data()) {
    std::vector<double> tmp(in.begin(), in.end());
    fftw_execute_r2r(plan, tmp.data(), out.data());
  } else {
    fftw_execute_r2r(plan, const_cast<double*>(in.data()), out.data());
  }
}

}  // namespace

void dst1(std::span<const double> in, std::span<double> out) { execute(FFTW_RODFT00, in, out); }

void dct1(std::span<const double> in, std::span<double> out) {
  if (in.size() < 2) throw std::invalid_argument("DCT-I needs at least two points");
  execute(FFTW_REDFT00, in, out);
}

std::size_t padded_size(std::size_t n, std::size_t pad) {
  if (pad == 0) throw std::invalid_argument("padding factor must be >= 1");
  return pad * (n + 1) - 1;
}

std::vector<double> synthesize(double radius, std::span<const double> coeffs, std::size_t m) {
  if (m < coeffs.size()) throw std::invalid_argument("synthesis grid coarser than spectrum");
  const double dk = std::numbers::pi / radius;
  const double dr = radius / static_cast<double>(m + 1);
  std::vector<double> x(m, 0.0);
  for (std::size_t k = 0; k < coeffs.size(); ++k) x[k] = static_cast<double>(k + 1) * dk * coeffs[k];
  std::vector<double> w(m);
  dst1(x, w);
  const double scale = 1.0 / (4.0 * std::numbers::pi * radius);
  for (std::size_t j = 0; j < m; ++j) w[j] *= scale / (static_cast<double>(j + 1) * dr);
  return w;
}

std::vector<double> analyze(double radius, std::span<const double> values, std::size_t keep) {
  const std::size_t m = values.size();
  if (keep > m) throw std::invalid_argument("cannot keep more modes than samples");
  const double dk = std::numbers::pi / radius;
  const double dr = radius / static_cast<double>(m + 1);
  std::vector<double> w(m);
  for (std::size_t j = 0; j < m; ++j) w[j] = static_cast<double>(j + 1) * dr * values[j];
  std::vector<double> y(m);
  dst1(w, y);
  std::vector<double> c(keep);
  const double scale = 2.0 * std::numbers::pi * dr;
  for (std::size_t k = 0; k < keep; ++k) c[k] = scale * y[k] / (static_cast<double>(k + 1) * dk);
  return c;
}

double extrapolate_to_origin(std::span<const double> f) {
  if (f.size() < 3) throw std::invalid_argument("origin extrapolation needs three samples");
  // Lagrange weights at x = 0 for nodes x = 1, 4, 9 (units of h^2).
  return 1.5 * f[0] - 0.6 * f[1] + 0.1 * f[2];
}

}  // namespace transform

SpectralField to_spectral(const RadialField& f) {
  return SpectralField(f.grid, transform::analyze(f.grid.radius(), f.values, f.grid.size()));
}

RadialField to_physical(const SpectralField& F) {
  return RadialField(F.grid, transform::synthesize(F.grid.radius(), F.coeffs, F.grid.size()));
}

}  // namespace nlkg
