#include "nlkg/harness/commands.hpp"

#include <fmt/format.h>
#include <omp.h>
#include <spdlog/spdlog.h>

#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>

#include "nlkg/harness/trajectory_io.hpp"
#include "nlkg/kernel.hpp"
#include "nlkg/morawetz.hpp"
#include "nlkg/norms.hpp"
#include "nlkg/scattering.hpp"

namespace nlkg::harness {

namespace {

std::string out_path(const RunConfig& cfg, const std::string& suffix) {
  return (std::filesystem::path(cfg.out_dir) / (cfg.tag + suffix)).string();
}

void warn_sampling(const RunConfig& cfg) {
  const std::size_t samples = cfg.evolution.sample_count();
  if (samples < 201) {
    spdlog::warn("only {} samples stored; time norms want >= 200 (lower evolution.sample_stride)", samples);
  }
}

IMethodParams method_params(const RunConfig& cfg, double N) { return {N, cfg.s, cfg.p}; }

// Runs body(i) for i in [0, count) on up to `jobs` threads and rethrows the first failure.
template <class Body>
void parallel_points(std::size_t count, int jobs, Body&& body) {
  std::exception_ptr failure;
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, jobs))
  for (long long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(nlkg_harness_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

nlohmann::json rational_json(const Rational& q) {
  auto as_json = [](const boost::multiprecision::cpp_int& v) -> nlohmann::json {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
      return v.convert_to<long long>();
    }
    return v.str();
  };
  return {{"num", as_json(boost::multiprecision::numerator(q))}, {"den", as_json(boost::multiprecision::denominator(q))}};
}

nlohmann::json branched(const Rational& selected, const Rational& low, const Rational& high) {
  return {{"value", rational_json(selected)}, {"low", rational_json(low)}, {"high", rational_json(high)}};
}

}  // namespace

std::string csv_number(double x) { return fmt::format("{:.17g}", x); }

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::vector<DiagnosticsRecord> diagnostics_records(const Trajectory& traj, const RunConfig& cfg) {
  const IMethodParams prm = method_params(cfg, cfg.N);
  const std::size_t pad = traj.config.dealias_pad;
  MorawetzAccumulator acc(prm, pad);
  std::vector<DiagnosticsRecord> rows;
  rows.reserve(traj.size());
  for (const State& st : traj.states) {
    DiagnosticsRecord r;
    r.t = st.t;
    r.E_u = energy(st, cfg.p, pad);
    const State v = apply_i(st, prm);
    r.E_Iu = energy(v, cfg.p, pad);
    r.hs_pair = hs_pair_norm(st, cfg.s);
    r.origin_value_Iu = value_at_origin(v.u);
    if (cfg.morawetz) {
      acc.add(st);
      r.morawetz_potential_cum = acc.weighted_potential();
      r.origin_term_cum = acc.origin_term();
      r.R1_cum = acc.R1();
      r.R2_cum = acc.R2();
    }
    if (cfg.sobolev && h1_norm(v.u) > 0.0) r.radial_sobolev_ratio = radial_sobolev_ratio(v.u);
    rows.push_back(r);
  }
  return rows;
}

std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& rows) {
  std::string out = "t,E_u,E_Iu,Hs_pair,morawetz_potential_cum,origin_term_cum,R1_cum,R2_cum,radial_sobolev_ratio\n";
  for (const auto& r : rows) {
    out += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", r.t, r.E_u, r.E_Iu,
                       r.hs_pair, r.morawetz_potential_cum, r.origin_term_cum, r.R1_cum, r.R2_cum,
                       r.radial_sobolev_ratio);
  }
  return out;
}

RunOutputs cmd_run(const RunConfig& cfg) {
  cfg.validate();
  warn_sampling(cfg);
  ensure_directory(cfg.out_dir);
  const State data = cfg.initial_data();
  spdlog::info("run: {} data, R = {}, n = {}, T = {}, dt = {}", to_string(cfg.data.kind), cfg.R, cfg.n,
               cfg.evolution.T, cfg.evolution.dt);
  const Trajectory traj = evolve(data, cfg.evolution);
  if (!traj.clean()) spdlog::warn("boundary guard breached at {} samples", traj.guard_violations.size());
  const auto rows = diagnostics_records(traj, cfg);
  RunOutputs out{out_path(cfg, ".csv"), out_path(cfg, ".traj"), rows.size()};
  write_text(out.csv_path, diagnostics_csv(rows));
  write_trajectory(out.trajectory_path, traj, cfg.s, cfg.N);
  spdlog::info("run: wrote {} rows to {}", rows.size(), out.csv_path);
  return out;
}

std::string cmd_sweep_n(const RunConfig& cfg, int jobs) {
  cfg.validate();
  warn_sampling(cfg);
  ensure_directory(cfg.out_dir);
  const Trajectory traj = evolve(cfg.initial_data(), cfg.evolution);
  if (!traj.clean()) spdlog::warn("boundary guard breached at {} samples", traj.guard_violations.size());
  const std::size_t count = cfg.N_list.size();
  std::vector<double> delta(count), e0(count), r1(count), r2(count);
  const std::size_t pad = traj.config.dealias_pad;
  parallel_points(count, jobs, [&](std::size_t i) {
    const IMethodParams prm = method_params(cfg, cfg.N_list[i]);
    e0[i] = mollified_energy(traj.initial(), prm, pad);
    double worst = 0.0;
    for (const State& st : traj.states) worst = std::max(worst, std::fabs(mollified_energy(st, prm, pad) - e0[i]));
    delta[i] = worst;
    const MorawetzBudget b = morawetz_budget(traj, prm);
    r1[i] = b.R1;
    r2[i] = b.R2;
  });
  std::string csv = "N,delta_E_Iu,E_Iu0,R1,R2\n";
  for (std::size_t i = 0; i < count; ++i) {
    csv += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", cfg.N_list[i], delta[i], e0[i], r1[i], r2[i]);
  }
  const auto slope = count >= 2 ? log2_slope(cfg.N_list, delta) : std::nullopt;
  csv += slope ? fmt::format("slope,{:.17g},,,\n", *slope) : std::string("slope,NA,,,\n");
  write_text(out_path(cfg, "_sweep_n.csv"), csv);
  return csv;
}

std::string cmd_sweep_p(const RunConfig& cfg, int jobs) {
  cfg.validate();
  ensure_directory(cfg.out_dir);
  const std::size_t count = cfg.p_list.size();
  struct Row {
    double s_c, s_thr, e0, drift, delta, W, residual;
  };
  std::vector<Row> rows(count);
  parallel_points(count, jobs, [&](std::size_t i) {
    RunConfig c = cfg;
    c.p = cfg.p_list[i];
    c.evolution.p = c.p;
    const Trajectory traj = evolve(c.initial_data(), c.evolution);
    const std::size_t pad = traj.config.dealias_pad;
    const IMethodParams prm = method_params(c, c.N);
    Row& r = rows[i];
    r.s_c = critical_exponent(c.p);
    r.s_thr = threshold_exponent(c.p);
    r.e0 = energy(traj.initial(), c.p, pad);
    const double m0 = mollified_energy(traj.initial(), prm, pad);
    r.drift = 0.0;
    r.delta = 0.0;
    for (const State& st : traj.states) {
      r.drift = std::max(r.drift, std::fabs(energy(st, c.p, pad) - r.e0));
      r.delta = std::max(r.delta, std::fabs(mollified_energy(st, prm, pad) - m0));
    }
    const MorawetzBudget b = morawetz_budget(traj, prm);
    r.W = b.weighted_potential;
    r.residual = b.residual;
  });
  std::string csv = "p,s_c,s_threshold,E_u0,energy_drift,delta_E_Iu,weighted_potential,morawetz_residual\n";
  for (std::size_t i = 0; i < count; ++i) {
    const Row& r = rows[i];
    csv += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", cfg.p_list[i], r.s_c,
                       r.s_thr, r.e0, r.drift, r.delta, r.W, r.residual);
  }
  write_text(out_path(cfg, "_sweep_p.csv"), csv);
  return csv;
}

void cmd_probe_kernel(const RunConfig& cfg, int jobs) {
  cfg.validate();
  ensure_directory(cfg.out_dir);
  const auto& Ms = cfg.kernel.M_list;
  const auto pairs = default_pairs(cfg.s);
  std::vector<EnvelopeFit> fits(Ms.size());
  std::vector<double> origin(Ms.size());
  std::vector<StrichartzProbe> probes(Ms.size() * pairs.size());
  parallel_points(Ms.size() * (pairs.size() + 1), jobs, [&](std::size_t job) {
    const std::size_t i = job % Ms.size(), kind = job / Ms.size();
    const double M = Ms[i];
    if (kind == 0) {
      origin[i] = kernel_value(M, 0.0, 0.0).real();
      const double lo = std::max(2.0 / M, std::min(16.0 / M, M / 4.0));
      fits[i] = decay_envelope_fit(M, lo, M / 2.0, cfg.kernel.envelope_samples);
      return;
    }
    const double T = cfg.kernel.T > 0.0 ? cfg.kernel.T : M;
    const RadialGrid g(T + cfg.kernel.margin, cfg.kernel.n);
    probes[i * pairs.size() + kind - 1] = strichartz_probe(M, pairs[kind - 1], flat_spectrum_data(g).u, T);
  });

  std::string summary = "M,K_origin,K_origin_closed_form,envelope_exponent,envelope_amplitude,within_bound\n";
  std::string envelope = "M,t,sup_abs_K,argmax_x\n";
  std::string strich = "M,q,r,m,norm,l2,ratio\n";
  for (std::size_t i = 0; i < Ms.size(); ++i) {
    const EnvelopeFit& f = fits[i];
    summary += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{}\n", Ms[i], origin[i], kernel_origin_value(Ms[i]),
                           f.exponent, f.amplitude, f.within_bound ? 1 : 0);
    for (std::size_t k = 0; k < f.t.size(); ++k) {
      envelope += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", Ms[i], f.t[k], f.sup[k], f.argmax[k]);
    }
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      const StrichartzProbe& p = probes[i * pairs.size() + j];
      strich += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", p.M, p.pair.q, p.pair.r,
                            p.pair.m, p.norm, p.l2, p.ratio);
    }
  }
  std::string slopes = "q,r,m,slope\n";
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    std::vector<double> ratios;
    for (std::size_t i = 0; i < Ms.size(); ++i) ratios.push_back(probes[i * pairs.size() + j].ratio);
    const auto sl = Ms.size() >= 2 ? log2_slope(Ms, ratios) : std::nullopt;
    slopes += fmt::format("{:.17g},{:.17g},{:.17g},{}\n", pairs[j].q, pairs[j].r, pairs[j].m,
                          sl ? fmt::format("{:.17g}", *sl) : std::string("NA"));
  }
  write_text(out_path(cfg, "_kernel.csv"), summary);
  write_text(out_path(cfg, "_envelope.csv"), envelope);
  write_text(out_path(cfg, "_strichartz.csv"), strich);
  write_text(out_path(cfg, "_strichartz_slopes.csv"), slopes);
}

nlohmann::json exponents_json(const std::string& p_text, const std::string& s_text) {
  Rational p, s;
  try {
    p = parse_rational(p_text);
    s = parse_rational(s_text);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("exponents: ") + e.what());
  }
  ExactExponentReport e;
  try {
    e = exponent_report_exact(p, s);
  } catch (const std::invalid_argument& err) {
    throw ConfigError(std::string("exponents: ") + err.what());
  }
  const ExponentReport d = to_double(e);
  nlohmann::json j;
  j["p"] = rational_json(e.p);
  j["s"] = rational_json(e.s);
  j["s_c"] = rational_json(e.s_c);
  j["branch"] = e.low_branch ? "low" : "high";
  j["s_threshold"] = branched(e.s_threshold, e.s_threshold_low, e.s_threshold_high);
  j["theta1"] = branched(e.theta1, e.theta1_low, e.theta1_high);
  j["theta2"] = branched(e.theta2, e.theta2_low, e.theta2_high);
  j["theta3"] = branched(e.theta3, e.theta3_low, e.theta3_high);
  j["theta"] = rational_json(e.theta);
  j["s_above_threshold"] = e.s > e.s_threshold;
  j["s_equals_threshold"] = e.s == e.s_threshold;
  j["holder_time_defect"] = holder_time_defect(d);
  j["holder_space_defect"] = holder_space_defect(d);
  return j;
}

nlohmann::json cmd_report(const RunConfig& cfg) {
  cfg.validate();
  const TrajectoryFile file = read_trajectory(out_path(cfg, ".traj"), cfg.evolution);
  const Trajectory& traj = file.trajectory;
  const std::size_t pad = traj.config.dealias_pad;
  const double p = traj.config.p;
  const IMethodParams prm{file.N, file.s, p};
  prm.validate();

  nlohmann::json j;
  j["samples"] = traj.size();
  j["T"] = traj.times.back();
  j["clean"] = traj.clean();
  const double e0 = energy(traj.initial(), p, pad);
  const double m0 = mollified_energy(traj.initial(), prm, pad);
  double drift = 0.0, delta = 0.0, sup_m = 0.0;
  for (const State& st : traj.states) {
    drift = std::max(drift, std::fabs(energy(st, p, pad) - e0));
    const double m = mollified_energy(st, prm, pad);
    delta = std::max(delta, std::fabs(m - m0));
    sup_m = std::max(sup_m, m);
  }
  j["energy"] = {{"initial", e0}, {"drift", drift}};
  j["mollified_energy"] = {{"N", file.N}, {"initial", m0}, {"delta", delta}, {"sup", sup_m}};

  if (traj.size() >= 4) {
    bool sampled = true;
    std::vector<double> cps = default_checkpoints(traj);
    for (double t : cps) {
      try {
        traj.index_of(t);
      } catch (const std::out_of_range&) {
        sampled = false;
      }
    }
    if (sampled) {
      const CauchyReport c = cauchy_report(traj, file.s, cps);
      j["cauchy"] = {{"checkpoints", c.checkpoints}, {"diffs", c.diffs}, {"final_error", c.final_error}};
      if (c.warning) j["cauchy"]["warning"] = *c.warning;
    }
  }

  const MorawetzBudget b = morawetz_budget(traj, prm);
  const MorawetzRatio ratio = morawetz_strauss_check(b, sup_m);
  j["morawetz"] = {{"weighted_potential", b.weighted_potential}, {"origin_term", b.origin_term},
                   {"angular_term", b.angular_term},             {"boundary_start", b.boundary_start},
                   {"boundary_end", b.boundary_end},             {"R1", b.R1},
                   {"R2", b.R2},                                 {"residual", b.residual},
                   {"strauss_ratio", ratio.ratio}};
  if (b.warning) j["morawetz"]["warning"] = *b.warning;
  if (cfg.partition_threshold > 0.0) j["lp2_partition"] = lp2_partition(traj, prm, cfg.partition_threshold);
  j["z_pairs"] = "finite surrogate {(inf,2), (2/s,2/(1-s)), (4,4)}";
  write_text(out_path(cfg, "_report.json"), j.dump(2) + "\n");
  return j;
}

}  // namespace nlkg::harness
