// nlkg: command-line driver for the radial Klein-Gordon simulator and diagnostics.

#include <omp.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "nlkg/harness/commands.hpp"
#include "nlkg/harness/trajectory_io.hpp"
#include "nlkg/kernel.hpp"

using namespace nlkg;
using namespace nlkg::harness;

namespace {

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("nlkg");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("NLKG_LOG")) {
    const auto level = spdlog::level::from_str(env);
    if (level == spdlog::level::off && std::string(env) != "off") {
      spdlog::warn("NLKG_LOG='{}' is not a level (trace|debug|info|warn|error|critical|off)", env);
    } else {
      spdlog::set_level(level);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();

  CLI::App app{"Radial nonlinear Klein-Gordon simulator and diagnostics"};
  app.require_subcommand(1, 1);

  std::string config_path, out_dir, p_text, s_text;
  int jobs = 1, threads = 1;
  std::uint64_t seed = 0;

  auto common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", config_path, "Configuration file (key = value)");
    if (needs_config) opt->required();
    sub->add_option("--out", out_dir, "Output directory (overrides output.dir)");
    sub->add_option("--jobs", jobs, "Parallel sweep points")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "Seed for rough data (overrides data.seed)");
    sub->add_option("--threads", threads, "Threads inside one run's kernels")->check(CLI::PositiveNumber);
  };

  auto* run = app.add_subcommand("run", "Evolve one configuration; write diagnostics CSV and trajectory");
  common(run, true);
  auto* sweep_n = app.add_subcommand("sweep-n", "Mollified-energy increment across N_list");
  common(sweep_n, true);
  auto* sweep_p = app.add_subcommand("sweep-p", "Runs across p_list");
  common(sweep_p, true);
  auto* probe = app.add_subcommand("probe-kernel", "Kernel decay envelopes and Strichartz probes");
  common(probe, false);
  auto* expo = app.add_subcommand("exponents", "Exact exponent report as JSON");
  common(expo, false);
  expo->add_option("--p", p_text, "Exponent p (e.g. 4 or 9/2)");
  expo->add_option("--s", s_text, "Regularity s (e.g. 0.95 or 11/12)");
  auto* report = app.add_subcommand("report", "Summarize a stored run");
  common(report, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    omp_set_num_threads(threads);
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_run_config(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    const CLI::App* sub = app.get_subcommands().front();
    if (sub->count("--seed")) cfg.data.seed = seed;

    if (sub == run) {
      const RunOutputs o = cmd_run(cfg);
      std::cout << o.csv_path << "\n" << o.trajectory_path << "\n";
    } else if (sub == sweep_n) {
      std::cout << cmd_sweep_n(cfg, jobs);
    } else if (sub == sweep_p) {
      std::cout << cmd_sweep_p(cfg, jobs);
    } else if (sub == probe) {
      cmd_probe_kernel(cfg, jobs);
    } else if (sub == expo) {
      const std::string p = p_text.empty() ? cfg.p_text : p_text;
      const std::string s = s_text.empty() ? cfg.s_text : s_text;
      const std::string text = exponents_json(p, s).dump(2) + "\n";
      std::cout << text;
      if (!out_dir.empty()) {
        ensure_directory(cfg.out_dir);
        write_text(cfg.out_dir + "/" + cfg.tag + "_exponents.json", text);
      }
    } else if (sub == report) {
      std::cout << cmd_report(cfg).dump(2) << "\n";
    }
    return kOk;
  } catch (const ConfigError& e) {
    spdlog::error("config: {}", e.what());
    return kConfigError;
  } catch (const IoError& e) {
    spdlog::error("io: {}", e.what());
    return kIoError;
  } catch (const NumericalFailure& e) {
    spdlog::error("numerical failure at t = {}: {}", e.time(), e.what());
    return kNumericalFailure;
  } catch (const QuadratureFailure& e) {
    spdlog::error("numerical failure: {}", e.what());
    return kNumericalFailure;
  } catch (const std::invalid_argument& e) {
    spdlog::error("config: {}", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kFailure;
  }
}
