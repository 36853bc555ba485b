#include "nlkg/exponents.hpp"

#include <cmath>
#include <limits>
#include <regex>
#include <stdexcept>

namespace nlkg {

namespace {

using boost::multiprecision::cpp_int;

constexpr double kTol = 1e-12;

template <class T>
ExponentSet<T> compute(const T& p, const T& s) {
  ExponentSet<T> e;
  e.p = p;
  e.s = s;
  e.s_c = T(3) / 2 - T(2) / (p - 1);
  e.s_threshold_low = 1 - (5 - p) * (p - 3) / (2 * (p - 1) * (p - 2));
  e.s_threshold_high = 1 - (5 - p) * (5 - p) / (2 * (p - 1) * (6 - p));
  e.theta1_low = (2 * s - 1) * (4 - p) / (s * (p - 1) * (p - 2));
  e.theta1_high = (4 * s - 1) * (p - 4) / (s * (p - 1) * (6 - p));
  e.theta2_low = (p + 2) * (p - 3) / ((p - 1) * (p - 2));
  e.theta2_high = (p + 2) * (5 - p) / ((6 - p) * (p - 1));
  e.theta3_low = (4 - p) / (s * (p - 1) * (p - 2));
  e.theta3_high = (p - 4) / (s * (p - 1) * (6 - p));
  e.theta = 1 / (s * (p - 1));
  e.low_branch = p <= 4;
  e.s_threshold = e.low_branch ? e.s_threshold_low : e.s_threshold_high;
  e.theta1 = e.low_branch ? e.theta1_low : e.theta1_high;
  e.theta2 = e.low_branch ? e.theta2_low : e.theta2_high;
  e.theta3 = e.low_branch ? e.theta3_low : e.theta3_high;
  return e;
}

template <class T>
void validate(const ExponentSet<T>& e) {
  auto in_unit = [](const T& x) { return x >= 0 && x <= 1; };
  if (!in_unit(e.theta1) || !in_unit(e.theta2) || !in_unit(e.theta3)) {
    throw std::invalid_argument("(p, s) gives an interpolation exponent outside [0, 1]");
  }
}

double to_d(const Rational& x) { return x.convert_to<double>(); }

// cpp_int reads a leading 0 as an octal prefix.
cpp_int decimal_int(const std::string& digits) {
  const auto nz = digits.find_first_not_of('0');
  return cpp_int(nz == std::string::npos ? std::string("0") : digits.substr(nz));
}

}  // namespace

Rational parse_rational(const std::string& text) {
  static const std::regex frac(R"(^\s*([+-]?\d+)\s*/\s*(\d+)\s*$)");
  static const std::regex dec(R"(^\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, frac)) {
    const cpp_int den = decimal_int(m[2].str());
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    const std::string num = m[1].str();
    const bool neg = !num.empty() && num.front() == '-';
    const cpp_int mag = decimal_int(num.front() == '-' || num.front() == '+' ? num.substr(1) : num);
    return Rational(neg ? cpp_int(-mag) : mag, den);
  }
  if (std::regex_match(text, m, dec) && (m[2].length() > 0 || m[3].length() > 0)) {
    const std::string digits = m[2].str() + m[3].str();
    cpp_int num = decimal_int(digits);
    if (m[1].str() == "-") num = -num;
    long long exp10 = -static_cast<long long>(m[3].length());
    if (m[4].matched) exp10 += std::stoll(m[4].str());
    cpp_int scale = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(std::llabs(exp10)));
    return exp10 >= 0 ? Rational(num * scale) : Rational(num, scale);
  }
  throw std::invalid_argument("not a rational number: '" + text + "'");
}

ExactExponentReport exponent_report_exact(const Rational& p, const Rational& s) {
  if (!(p > 3 && p < 5)) throw std::invalid_argument("p must satisfy 3 < p < 5");
  if (!(s > 0 && s < 1)) throw std::invalid_argument("s must satisfy 0 < s < 1");
  auto e = compute<Rational>(p, s);
  if (p == 4) {
    if (e.s_threshold_low != e.s_threshold_high || e.theta1_low != e.theta1_high ||
        e.theta2_low != e.theta2_high || e.theta3_low != e.theta3_high) {
      throw std::logic_error("branch formulas disagree at p = 4");
    }
  }
  validate(e);
  return e;
}

ExponentReport to_double(const ExactExponentReport& r) {
  ExponentReport d;
  d.p = to_d(r.p);
  d.s = to_d(r.s);
  d.s_c = to_d(r.s_c);
  d.s_threshold = to_d(r.s_threshold);
  d.s_threshold_low = to_d(r.s_threshold_low);
  d.s_threshold_high = to_d(r.s_threshold_high);
  d.theta1 = to_d(r.theta1);
  d.theta1_low = to_d(r.theta1_low);
  d.theta1_high = to_d(r.theta1_high);
  d.theta2 = to_d(r.theta2);
  d.theta2_low = to_d(r.theta2_low);
  d.theta2_high = to_d(r.theta2_high);
  d.theta3 = to_d(r.theta3);
  d.theta3_low = to_d(r.theta3_low);
  d.theta3_high = to_d(r.theta3_high);
  d.theta = to_d(r.theta);
  d.low_branch = r.low_branch;
  return d;
}

ExponentReport exponent_report(double p, double s) {
  if (!(p > 3.0 && p < 5.0)) throw std::invalid_argument("p must satisfy 3 < p < 5");
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("s must satisfy 0 < s < 1");
  auto e = compute<double>(p, s);
  auto in_unit = [](double x) { return x >= -kTol && x <= 1.0 + kTol; };
  if (!in_unit(e.theta1) || !in_unit(e.theta2) || !in_unit(e.theta3)) {
    throw std::invalid_argument("(p, s) gives an interpolation exponent outside [0, 1]");
  }
  return e;
}

double critical_exponent(double p) { return 1.5 - 2.0 / (p - 1.0); }

double threshold_exponent(double p) {
  if (!(p > 3.0 && p < 5.0)) throw std::invalid_argument("p must satisfy 3 < p < 5");
  const auto e = compute<double>(p, 0.5);
  return e.s_threshold;
}

double holder_time_defect(const ExponentReport& r) {
  const double lhs = 1.0 / (2.0 * (r.p - 1.0));
  return r.theta2 / (r.p + 2.0) + r.theta3 * r.s / 2.0 - lhs;
}

double holder_space_defect(const ExponentReport& r) {
  const double lhs = 1.0 / (2.0 * (r.p - 1.0));
  const double a = r.low_branch ? 2.0 : 6.0;
  return r.theta1 / a + r.theta2 / (r.p + 2.0) + r.theta3 * (1.0 - r.s) / a - lhs;
}

Admissibility is_wave_admissible(double q, double r, int d) {
  Admissibility out;
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  const double dd = d;
  const double iq = std::isinf(q) ? 0.0 : 1.0 / q;
  out.m = dd / 2.0 - iq - (std::isinf(r) ? 0.0 : dd / r);
  const bool q_ok = q > 2.0;  // (2, inf]
  const bool r_ok = r >= 2.0 && std::isfinite(r);
  if (!q_ok || !r_ok) return out;
  if (iq + (dd - 1.0) / (2.0 * r) > (dd - 1.0) / 4.0 + kTol) return out;
  if (d >= 4) {
    const double r_end = 2.0 * (dd - 1.0) / (dd - 3.0);
    if (std::fabs(q - 2.0) <= kTol && std::fabs(r - r_end) <= kTol) return out;
  }
  out.admissible = true;
  return out;
}

bool is_dual_inhomogeneous(double qt, double rt, double q, double r, int d) {
  if (!(q > 2.0) || !(r >= 2.0) || !std::isfinite(r)) return false;
  if (!(qt >= 1.0) || !(rt >= 1.0)) return false;
  auto inv = [](double x) { return std::isinf(x) ? 0.0 : 1.0 / x; };
  const double dd = d;
  if (std::fabs(inv(qt) + inv(q) - 1.0) > kTol) return false;
  if (std::fabs(inv(rt) + inv(r) - 1.0) > kTol) return false;
  return std::fabs(inv(qt) + dd * inv(rt) - 2.0 - (inv(q) + dd * inv(r))) <= kTol;
}

AdmissiblePair make_admissible_pair(double q, double r) {
  const auto a = is_wave_admissible(q, r, 3);
  if (!a.admissible) {
    throw std::invalid_argument("(q, r) = (" + std::to_string(q) + ", " + std::to_string(r) +
                                ") is not wave admissible");
  }
  return {q, r, a.m};
}

std::vector<AdmissiblePair> default_pairs(double s) {
  if (!(s > 0.5 && s < 1.0)) throw std::invalid_argument("default pair set needs 1/2 < s < 1");
  return {make_admissible_pair(std::numeric_limits<double>::infinity(), 2.0),
          make_admissible_pair(2.0 / s, 2.0 / (1.0 - s)), make_admissible_pair(4.0, 4.0)};
}

}  // namespace nlkg
