#include "nlkg/kernel.hpp"

#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <functional>
#include <numbers>

#include "nlkg/functionals.hpp"
#include "nlkg/multiplier.hpp"
#include "nlkg/norms.hpp"
#include "nlkg/transform.hpp"

namespace nlkg {

namespace {

using cplx = std::complex<double>;
constexpr double kFourPi = 4.0 * std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

template <unsigned N>
struct Rule {
  std::array<double, N> z{}, w{};
  Rule() {
    const auto& a = boost::math::quadrature::gauss<double, N>::abscissa();
    const auto& b = boost::math::quadrature::gauss<double, N>::weights();
    std::size_t k = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0.0) {
        z[k] = 0.0;
        w[k++] = b[i];
        continue;
      }
      z[k] = -a[i];
      w[k++] = b[i];
      z[k] = a[i];
      w[k++] = b[i];
    }
  }
};

// Filon panel: the slowly varying factor is expanded in Legendre polynomials by
// Gauss projection (exact through degree kFilon - 1), and each Legendre mode is
// integrated against e^{i kappa z} in closed form: int P_j e^{i kappa z} = 2 i^j j_j(kappa).
constexpr unsigned kFilon = 12;

struct FilonTable {
  Rule<kFilon> rule;
  std::array<std::array<double, kFilon>, kFilon> legendre{};  // [j][node]
  FilonTable() {
    for (unsigned i = 0; i < kFilon; ++i) {
      const double z = rule.z[i];
      double p0 = 1.0, p1 = z;
      legendre[0][i] = p0;
      legendre[1][i] = p1;
      for (unsigned j = 2; j < kFilon; ++j) {
        const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        legendre[j][i] = p2;
        p0 = p1;
        p1 = p2;
      }
    }
  }
};

const Rule<24>& gauss24() {
  static const Rule<24> r;
  return r;
}

const FilonTable& filon() {
  static const FilonTable t;
  return t;
}

// Spherical Bessel j_0..j_{kFilon-1} by upward recursion; stable for |kappa| >= kFilon.
std::array<double, kFilon> sph_bessel_up(double kappa) {
  std::array<double, kFilon> j{};
  j[0] = std::sin(kappa) / kappa;
  j[1] = std::sin(kappa) / (kappa * kappa) - std::cos(kappa) / kappa;
  for (unsigned n = 1; n + 1 < kFilon; ++n) j[n + 1] = (2.0 * n + 1.0) / kappa * j[n] - j[n - 1];
  return j;
}

struct Integrand {
  std::function<double(double)> weight;  // |psi(rho/M)|^2 or |phi(rho)|^2
  std::vector<double> breaks;           // weight is polynomial between consecutive breaks
};

class KernelQuadrature {
 public:
  KernelQuadrature(const Integrand& f, double t, double x) : f_(f), t_(t), x_(std::fabs(x)) {
    split_ = x_ > 0.0 && x_ * f_.breaks.back() > 1.0;
  }

  cplx run() const {
    cplx prev{};
    double scale = 0.0;
    for (std::size_t panels = 2; panels <= (1u << 14); panels *= 2) {
      cplx total{};
      scale = 0.0;
      for (std::size_t b = 0; b + 1 < f_.breaks.size(); ++b) {
        const double lo = f_.breaks[b], hi = f_.breaks[b + 1];
        const double H = 0.5 * (hi - lo) / static_cast<double>(panels);
        for (std::size_t p = 0; p < panels; ++p) {
          const double c = lo + (2.0 * static_cast<double>(p) + 1.0) * H;
          total += panel(c, H, scale);
        }
      }
      if (panels > 2 && std::abs(total - prev) <= 1e-12 * scale + 1e-300) return total;
      prev = total;
    }
    throw QuadratureFailure("kernel quadrature did not converge within the panel budget (t = " + std::to_string(t_) +
                            ", x = " + std::to_string(x_) + ")");
  }

 private:
  // Amplitude multiplying e^{i(t<rho> + sigma x rho)}.
  cplx amplitude(double rho) const {
    const double w = f_.weight(rho) * rho;
    if (split_) return kFourPi * w / (2.0 * x_) * cplx(0.0, -1.0);
    if (x_ == 0.0) return kFourPi * w * rho;
    return kFourPi * w * std::sin(rho * x_) / x_;
  }

  double phase(double rho, double sigma) const { return t_ * std::sqrt(1.0 + rho * rho) + sigma * x_ * rho; }
  double slope(double rho, double sigma) const { return t_ * rho / std::sqrt(1.0 + rho * rho) + sigma * x_; }

  cplx panel(double c, double H, double& scale) const {
    cplx out{};
    if (split_) {
      out += panel_phase(c, H, 1.0, scale);
      out -= panel_phase(c, H, -1.0, scale);
    } else {
      out += panel_phase(c, H, 0.0, scale);
    }
    return out;
  }

  cplx panel_phase(double c, double H, double sigma, double& scale) const {
    const double k = slope(c, sigma);
    const double kappa = k * H;
    const bool oscillatory = c * (std::fabs(t_) + x_) > 50.0 && std::fabs(kappa) >= static_cast<double>(kFilon);
    if (oscillatory) {
      const FilonTable& ft = filon();
      const double th_c = phase(c, sigma);
      std::array<cplx, kFilon> q{};
      for (unsigned i = 0; i < kFilon; ++i) {
        const double z = ft.rule.z[i], rho = c + H * z;
        const cplx a = amplitude(rho);
        scale += H * ft.rule.w[i] * std::abs(a);
        q[i] = a * std::exp(kI * (phase(rho, sigma) - th_c - kappa * z));
      }
      const auto jn = sph_bessel_up(kappa);
      cplx sum{}, ipow{1.0, 0.0};
      for (unsigned j = 0; j < kFilon; ++j) {
        cplx aj{};
        for (unsigned i = 0; i < kFilon; ++i) aj += ft.rule.w[i] * q[i] * ft.legendre[j][i];
        aj *= (2.0 * j + 1.0) / 2.0;
        sum += aj * 2.0 * ipow * jn[j];
        ipow *= kI;
      }
      return H * std::exp(kI * th_c) * sum;
    }
    const auto& g = gauss24();
    cplx sum{};
    for (unsigned i = 0; i < 24; ++i) {
      const double rho = c + H * g.z[i];
      const cplx a = amplitude(rho);
      scale += H * g.w[i] * std::abs(a);
      sum += g.w[i] * a * std::exp(kI * phase(rho, sigma));
    }
    return H * sum;
  }

  const Integrand& f_;
  double t_, x_;
  bool split_ = false;
};

double psi_squared(double rho, double M) {
  const double v = lp_bump(rho / M) - lp_bump(2.0 * rho / M);
  return v * v;
}

Integrand band_integrand(double M) {
  return {[M](double rho) { return psi_squared(rho, M); }, {0.5 * M, M, 2.0 * M}};
}

Integrand low_integrand() {
  return {[](double rho) {
            const double v = lp_bump(rho);
            return v * v;
          },
          {0.0, 1.0, 2.0}};
}

void require_dyadic(double M) {
  if (!is_dyadic(M)) throw std::invalid_argument("M must be dyadic, got " + std::to_string(M));
}

}  // namespace

std::complex<double> kernel_value(double M, double t, double x) {
  require_dyadic(M);
  const Integrand f = band_integrand(M);
  return KernelQuadrature(f, t, x).run();
}

std::complex<double> kernel_value_low(double t, double x) {
  const Integrand f = low_integrand();
  return KernelQuadrature(f, t, x).run();
}

double kernel_origin_value(double M) {
  require_dyadic(M);
  // The integrand is piecewise polynomial of degree 12: 24-point Gauss is exact per piece.
  const auto& g = gauss24();
  double s = 0.0;
  for (auto [lo, hi] : {std::pair{0.5, 1.0}, std::pair{1.0, 2.0}}) {
    const double c = 0.5 * (lo + hi), H = 0.5 * (hi - lo);
    for (unsigned i = 0; i < 24; ++i) {
      const double rho = c + H * g.z[i];
      s += H * g.w[i] * psi_squared(rho, 1.0) * rho * rho;
    }
  }
  return M * M * M * kFourPi * s;
}

KernelProbe probe_kernel(double M, const std::vector<double>& t_samples, const std::vector<double>& x_samples) {
  require_dyadic(M);
  KernelProbe out{M, t_samples, x_samples, {}};
  out.values.resize(t_samples.size() * x_samples.size());
  for (std::size_t i = 0; i < t_samples.size(); ++i) {
    for (std::size_t j = 0; j < x_samples.size(); ++j) {
      out.values[i * x_samples.size() + j] = kernel_value(M, t_samples[i], x_samples[j]);
    }
  }
  return out;
}

std::pair<double, double> kernel_sup(double M, double t) {
  require_dyadic(M);
  const Integrand f = band_integrand(M);
  auto mag = [&](double x) { return std::abs(KernelQuadrature(f, t, x).run()); };
  const double h = 1.0 / (8.0 * M);
  const auto count = static_cast<std::size_t>(std::ceil((std::fabs(t) + 2.0) / h));
  double best = -1.0;
  std::size_t arg = 0;
  for (std::size_t j = 0; j <= count; ++j) {
    const double v = mag(static_cast<double>(j) * h);
    if (v > best) {
      best = v;
      arg = j;
    }
  }
  const double lo = std::max(0.0, (static_cast<double>(arg) - 1.0) * h);
  const double hi = (static_cast<double>(arg) + 1.0) * h;
  const auto r = boost::math::tools::brent_find_minima([&](double x) { return -mag(x); }, lo, hi, 40);
  if (-r.second > best) return {-r.second, r.first};
  return {best, static_cast<double>(arg) * h};
}

EnvelopeFit decay_envelope_fit(double M, double t_lo, double t_hi, std::size_t samples) {
  require_dyadic(M);
  if (samples < 3) throw std::invalid_argument("envelope fit needs at least 3 time samples");
  const double tol = 1e-12;
  if (!(t_lo >= 2.0 / M - tol && t_hi <= M / 2.0 + tol && t_lo < t_hi)) {
    throw std::invalid_argument("envelope fit window must satisfy 2/M <= t_lo < t_hi <= M/2");
  }
  EnvelopeFit fit;
  fit.M = M;
  const double a = std::log(t_lo), b = std::log(t_hi);
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(samples - 1));
    const auto [sup, x] = kernel_sup(M, t);
    fit.t.push_back(t);
    fit.sup.push_back(sup);
    fit.argmax.push_back(x);
  }
  const auto slope = log2_slope(fit.t, fit.sup);
  if (!slope) throw std::invalid_argument("degenerate envelope samples");
  fit.exponent = *slope;
  double mean = 0.0;
  for (std::size_t i = 0; i < samples; ++i) mean += std::log(fit.sup[i]) - fit.exponent * std::log(fit.t[i]);
  fit.amplitude = std::exp(mean / static_cast<double>(samples));
  fit.within_bound = fit.exponent >= -1.2 && fit.exponent <= -0.8;
  return fit;
}

EnvelopeFit decay_envelope_fit(double M) {
  const double lo = std::max(2.0 / M, std::min(16.0 / M, M / 4.0));
  return decay_envelope_fit(M, lo, M / 2.0);
}

StrichartzProbe strichartz_probe(double M, const AdmissiblePair& pair, const RadialField& f, double T,
                                 std::size_t samples) {
  require_dyadic(M);
  const auto adm = is_wave_admissible(pair.q, pair.r, 3);
  if (!adm.admissible) throw std::invalid_argument("strichartz_probe needs a wave-admissible pair");
  StrichartzProbe out;
  out.M = M;
  out.pair = {pair.q, pair.r, adm.m};
  out.T = T > 0.0 ? T : M;
  out.samples = samples > 0 ? samples : std::max<std::size_t>(200, static_cast<std::size_t>(std::ceil(4.0 * M * out.T))) + 1;
  if (out.samples < 2) throw std::invalid_argument("strichartz_probe needs at least two samples");

  const RadialField fm = lp_project(f, LpBand::Eq, M);
  out.l2 = lebesgue_norm(fm, 2.0);
  if (out.l2 == 0.0) return out;

  const RadialGrid& g = f.grid;
  const SpectralField F = to_spectral(fm);
  std::vector<double> omega(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) omega[k] = std::sqrt(1.0 + g.frequency(k) * g.frequency(k));
  std::vector<double> times(out.samples), values(out.samples);
  for (std::size_t i = 0; i < out.samples; ++i) {
    const double t = out.T * static_cast<double>(i) / static_cast<double>(out.samples - 1);
    SpectralField C(g), S(g);
    for (std::size_t k = 0; k < g.size(); ++k) {
      C[k] = std::cos(t * omega[k]) * F[k];
      S[k] = std::sin(t * omega[k]) * F[k];
    }
    const RadialField re = to_physical(C), im = to_physical(S);
    RadialField mod(g);
    for (std::size_t j = 0; j < g.size(); ++j) mod[j] = std::hypot(re[j], im[j]);
    times[i] = t;
    values[i] = lebesgue_norm(mod, pair.r);
  }
  out.norm = time_lebesgue(times, values, pair.q);
  out.ratio = out.norm / (std::pow(M, adm.m) * out.l2);
  return out;
}

}  // namespace nlkg
