#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace nlkg {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "4", "-0.95", "11/12" or "1.5e-1" into an exact rational.
Rational parse_rational(const std::string& text);

/// The closed-form exponents attached to (p, s). Branched quantities keep both
/// branch values: `low` is the 3 < p <= 4 formula, `high` the 4 <= p < 5 one;
/// `s_threshold`, `theta1..3` hold the branch that applies to p.
template <class T>
struct ExponentSet {
  T p, s;
  T s_c;
  T s_threshold, s_threshold_low, s_threshold_high;
  T theta1, theta1_low, theta1_high;
  T theta2, theta2_low, theta2_high;
  T theta3, theta3_low, theta3_high;
  /// 1 / (s (p - 1)).
  T theta;
  /// True when the low-p branch is the one selected (p <= 4).
  bool low_branch = true;
};

using ExponentReport = ExponentSet<double>;
using ExactExponentReport = ExponentSet<Rational>;

/// Throws std::invalid_argument unless 3 < p < 5, 0 < s < 1 and every selected
/// theta lies in [0, 1]. At p = 4 both branches are evaluated and must agree.
ExactExponentReport exponent_report_exact(const Rational& p, const Rational& s);
ExponentReport exponent_report(double p, double s);

ExponentReport to_double(const ExactExponentReport& r);

double critical_exponent(double p);
double threshold_exponent(double p);

/// Residuals of the Holder bookkeeping behind the L^{2(p-1)} interpolation:
///   time:  1/(2(p-1)) = theta2/(p+2) + theta3 s/2
///   space: 1/(2(p-1)) = theta1/a + theta2/(p+2) + theta3 (1-s)/a
/// with a = 2 on the low branch (L^inf L^2, L^{2/s} L^{2/(1-s)}) and a = 6 on the
/// high branch (L^inf L^6, L^{2/s} L^{6/(1-s)}).
double holder_time_defect(const ExponentReport& r);
double holder_space_defect(const ExponentReport& r);

struct Admissibility {
  bool admissible = false;
  /// Level from 1/q + d/r = d/2 - m.
  double m = 0.0;
};

/// (q, r) in (2, inf] x [2, inf), 1/q + (d-1)/(2r) <= (d-1)/4 and, for d >= 3,
/// (q, r) != (2, 2(d-1)/(d-3)). q = inf is std::numeric_limits<double>::infinity().
Admissibility is_wave_admissible(double q, double r, int d = 3);

/// (q~, r~) is the Holder dual of an admissible-range (q, r) and satisfies
/// 1/q~ + d/r~ - 2 = 1/q + d/r.
bool is_dual_inhomogeneous(double qt, double rt, double q, double r, int d = 3);

struct AdmissiblePair {
  double q;
  double r;
  double m;
};

/// Throws std::invalid_argument when (q, r) is not wave admissible in 3D.
AdmissiblePair make_admissible_pair(double q, double r);

/// {(inf, 2), (2/s, 2/(1-s)), (4, 4)}.
std::vector<AdmissiblePair> default_pairs(double s);

}  // namespace nlkg
