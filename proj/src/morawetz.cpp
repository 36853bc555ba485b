#include "nlkg/morawetz.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nlkg/norms.hpp"
#include "nlkg/transform.hpp"

namespace nlkg {

RadialField commutator(const State& st, const IMethodParams& prm, std::size_t pad) {
  const MultiplierSymbol I = prm.symbol();
  const SpectralField U = to_spectral(st.u);
  const SpectralField IU = apply_multiplier(U, I);
  const SpectralField a = projected_power(IU, prm.p, pad);
  const SpectralField b = apply_multiplier(projected_power(U, prm.p, pad), I);
  SpectralField c(U.grid);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] - b[k];
  return to_physical(c);
}

MorawetzSample morawetz_sample(const State& st, const IMethodParams& prm, std::size_t pad) {
  const State v = apply_i(st, prm);
  const RadialField vr = radial_derivative(v.u);
  const RadialField G = commutator(st, prm, pad);
  MorawetzSample out;
  out.t = st.t;
  out.potential = radial_power_integral(v.u, prm.p + 1.0, 1);
  const double v0 = value_at_origin(v.u);
  out.origin = 2.0 * std::numbers::pi * v0 * v0;
  // |grad v|^2 and |grad v . x/|x||^2 coincide for radial v.
  const double grad_sq = radial_integral(vr, vr, 1);
  const double radial_sq = radial_integral(vr, vr, 1);
  out.angular = grad_sq - radial_sq;
  out.flux = radial_integral(vr, v.ut, 2) + radial_integral(v.u, v.ut, 1);
  out.r1 = radial_integral(vr, G, 2);
  out.r2 = radial_integral(v.u, G, 1);
  return out;
}

void MorawetzAccumulator::add(const State& st) {
  const MorawetzSample s = morawetz_sample(st, prm_, pad_);
  if (last_) {
    const double h = 0.5 * (s.t - last_->t);
    potential_ += h * (s.potential + last_->potential);
    origin_ += h * (s.origin + last_->origin);
    angular_ += h * (s.angular + last_->angular);
    r1_ += h * (s.r1 + last_->r1);
    r2_ += h * (s.r2 + last_->r2);
  } else {
    first_ = s;
  }
  last_ = s;
  times_.push_back(s.t);
  cum_.push_back(potential_);
}

MorawetzBudget MorawetzAccumulator::budget() const {
  MorawetzBudget b;
  if (!first_) return b;
  b.weighted_potential = potential_;
  b.origin_term = origin_;
  b.angular_term = angular_;
  b.boundary_start = first_->flux;
  b.boundary_end = last_->flux;
  b.R1 = r1_;
  b.R2 = r2_;
  const double c = (prm_.p - 1.0) / (prm_.p + 1.0);
  b.residual = std::fabs(c * b.weighted_potential + b.origin_term + b.angular_term -
                         (b.boundary_start - b.boundary_end) - (b.R1 + b.R2));
  b.times = times_;
  b.weighted_potential_cum = cum_;
  return b;
}

MorawetzBudget morawetz_budget(const Trajectory& traj, const IMethodParams& prm) {
  MorawetzAccumulator acc(prm, traj.config.dealias_pad);
  for (const State& st : traj.states) acc.add(st);
  MorawetzBudget b = acc.budget();
  if (!traj.clean()) {
    b.warning = "boundary guard breached at " + std::to_string(traj.guard_violations.size()) +
                " samples; budget may be contaminated by reflections";
  }
  return b;
}

std::pair<double, double> r1_r2_integrals(const Trajectory& traj, const IMethodParams& prm) {
  const MorawetzBudget b = morawetz_budget(traj, prm);
  return {b.R1, b.R2};
}

MorawetzRatio morawetz_strauss_check(const MorawetzBudget& budget, double sup_E_Iu) {
  MorawetzRatio out;
  out.numerator = budget.weighted_potential;
  out.denominator = sup_E_Iu + std::fabs(budget.R1) + std::fabs(budget.R2);
  if (!std::isfinite(out.numerator) || !std::isfinite(out.denominator)) {
    throw std::invalid_argument("Morawetz ratio inputs are not finite");
  }
  if (out.denominator == 0.0) {
    if (out.numerator != 0.0) throw std::invalid_argument("zero energy bound with nonzero weighted potential");
    return out;
  }
  if (out.numerator < 0.0 || out.denominator < 0.0) throw std::invalid_argument("negative Morawetz ratio inputs");
  out.ratio = out.numerator / out.denominator;
  return out;
}

double radial_sobolev_ratio(const RadialField& f) {
  double sup = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) sup = std::max(sup, f.grid.node(j) * std::fabs(f[j]));
  const double h1 = h1_norm(f);
  if (h1 == 0.0) throw std::invalid_argument("radial Sobolev ratio of a zero field");
  return sup / h1;
}

}  // namespace nlkg
