#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nlkg/functionals.hpp"

namespace nlkg {

/// F(Iu) - I F(u), both powers formed on the grid refined by `pad` and projected
/// onto the native band.
RadialField commutator(const State& st, const IMethodParams& prm, std::size_t pad = 2);

/// Integrated Morawetz identity for v = Iu over the trajectory window.
///
/// With B(t) = int (v_r + v/r) v_t dx and G = F(v) - I F(u), v solves
/// v_tt - Lap v + v + F(v) = G, and multiplying by v_r + v/r gives
///
///   B(T) - B(0) + 2 pi int |v(t,0)|^2 dt + (p-1)/(p+1) int int |v|^(p+1)/|x|
///       + int int (|grad v|^2 - |v_r|^2)/|x| = int int v_r G + int int (v/|x|) G.
///
/// boundary_start = B(0), boundary_end = B(T); R1, R2 are the two right-hand terms.
struct MorawetzBudget {
  double weighted_potential = 0.0;
  double origin_term = 0.0;
  double angular_term = 0.0;
  double boundary_start = 0.0;
  double boundary_end = 0.0;
  double R1 = 0.0;
  double R2 = 0.0;
  double residual = 0.0;
  /// Running value of weighted_potential at every sample (trapezoid in time).
  std::vector<double> times;
  std::vector<double> weighted_potential_cum;
  std::optional<std::string> warning;
};

/// Sample integrands of the budget at one instant.
struct MorawetzSample {
  double t = 0.0;
  double potential = 0.0;  // int |v|^(p+1)/|x| dx
  double origin = 0.0;     // 2 pi |v(0)|^2
  double angular = 0.0;    // int (|grad v|^2 - |v_r|^2)/|x| dx
  double flux = 0.0;       // B(t)
  double r1 = 0.0;         // int v_r G dx
  double r2 = 0.0;         // int (v/|x|) G dx
};

MorawetzSample morawetz_sample(const State& st, const IMethodParams& prm, std::size_t pad = 2);

/// Streaming trapezoid accumulation of the budget, one sample at a time.
class MorawetzAccumulator {
 public:
  MorawetzAccumulator(IMethodParams prm, std::size_t pad) : prm_(prm), pad_(pad) {}

  void add(const State& st);
  /// Budget over the samples seen so far; all members are 0 before the first add.
  MorawetzBudget budget() const;

  double weighted_potential() const { return potential_; }
  double origin_term() const { return origin_; }
  double R1() const { return r1_; }
  double R2() const { return r2_; }
  const std::optional<MorawetzSample>& last() const { return last_; }

 private:
  IMethodParams prm_;
  std::size_t pad_;
  std::optional<MorawetzSample> first_, last_;
  double potential_ = 0.0, origin_ = 0.0, angular_ = 0.0, r1_ = 0.0, r2_ = 0.0;
  std::vector<double> times_, cum_;
};

/// (R1, R2) over the trajectory.
std::pair<double, double> r1_r2_integrals(const Trajectory& traj, const IMethodParams& prm);

/// Full budget; a trajectory with boundary guard breaches gets a warning attached.
MorawetzBudget morawetz_budget(const Trajectory& traj, const IMethodParams& prm);

struct MorawetzRatio {
  double numerator = 0.0;
  double denominator = 0.0;
  double ratio = 0.0;
};

/// weighted_potential / (sup_E_Iu + |R1| + |R2|). 0/0 is reported as 0; a zero
/// denominator under a nonzero numerator throws std::invalid_argument.
MorawetzRatio morawetz_strauss_check(const MorawetzBudget& budget, double sup_E_Iu);

/// max_j r_j |f(r_j)| / ||f||_{H^1} with the standard H^1 norm. Throws on a zero field.
double radial_sobolev_ratio(const RadialField& f);

}  // namespace nlkg
