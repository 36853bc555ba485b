#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "nlkg/functionals.hpp"
#include "nlkg/harness/config.hpp"

namespace nlkg::harness {

/// Exit codes of the nlkg executable.
enum ExitCode : int { kOk = 0, kFailure = 1, kConfigError = 2, kNumericalFailure = 3, kIoError = 4 };

/// One DiagnosticsRecord per trajectory sample, with cumulative Morawetz terms.
std::vector<DiagnosticsRecord> diagnostics_records(const Trajectory& traj, const RunConfig& cfg);

/// Fixed column order, 17 significant digits.
std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& rows);

/// Formats a double the way every CSV of the harness does.
std::string csv_number(double x);

struct RunOutputs {
  std::string csv_path;
  std::string trajectory_path;
  std::size_t rows = 0;
};

/// Evolves the configured data; writes <out>/<tag>.csv and <out>/<tag>.traj.
RunOutputs cmd_run(const RunConfig& cfg);

/// Evolves once and measures every N of N_list (up to `jobs` workers);
/// writes <out>/<tag>_sweep_n.csv. Returns the CSV text.
std::string cmd_sweep_n(const RunConfig& cfg, int jobs);

/// One run per p of p_list at fixed (s, N); writes <out>/<tag>_sweep_p.csv.
std::string cmd_sweep_p(const RunConfig& cfg, int jobs);

/// Kernel origin values, envelope fits and Strichartz probes per M; writes
/// <tag>_kernel.csv, <tag>_envelope.csv, <tag>_strichartz.csv, <tag>_strichartz_slopes.csv.
void cmd_probe_kernel(const RunConfig& cfg, int jobs);

/// Exact exponent report with rationals as {"num", "den"} pairs.
nlohmann::json exponents_json(const std::string& p, const std::string& s);

/// Summary of a stored run (<out>/<tag>.traj): energy drift, mollified-energy
/// increment, Cauchy report, Morawetz budget, optional L^{p+2} partition.
/// Writes <out>/<tag>_report.json and returns it.
nlohmann::json cmd_report(const RunConfig& cfg);

/// Creates the directory if needed; throws IoError on failure.
void ensure_directory(const std::string& dir);
void write_text(const std::string& path, const std::string& text);

}  // namespace nlkg::harness
