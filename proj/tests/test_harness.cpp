#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nlkg/data.hpp"
#include "nlkg/harness/commands.hpp"
#include "nlkg/harness/config.hpp"
#include "nlkg/harness/trajectory_io.hpp"

using namespace nlkg;
using namespace nlkg::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("nlkg_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void put(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string error_of(const std::string& text) {
  try {
    make_run_config(KeyValueConfig::parse(text)).validate();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

int cli(const std::string& args) {
  const std::string cmd = std::string(NLKG_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kSmall = R"(# small run
p = 4
s = 0.95
N = 8
[grid]
R = 30
n = 256
[evolution]
dt = 0.02
T = 1
sample_stride = 5
[data]
kind = rough_spectral
amplitude = 1
seed = 3
)";

}  // namespace

TEST_CASE("config parsing") {
  const KeyValueConfig kv = KeyValueConfig::parse("a = 1\n[grid]\nR = 2.5 # radius\n\n# comment\nn=64\n");
  CHECK(*kv.get("a") == "1");
  CHECK(kv.real("grid.R", 0) == 2.5);
  CHECK(kv.unsigned_int("grid.n", 0) == 64);
  CHECK(kv.text("missing", "x") == "x");
  CHECK_THROWS_AS(KeyValueConfig::parse("a = 1\na = 2\n"), ConfigError);
  CHECK_THROWS_AS(KeyValueConfig::parse("[grid\n"), ConfigError);
  CHECK_THROWS_AS(KeyValueConfig::parse("just words\n"), ConfigError);

  const RunConfig c = make_run_config(KeyValueConfig::parse(kSmall));
  CHECK(c.n == 256);
  CHECK(c.N == 8);
  CHECK(c.evolution.sample_stride == 5);
  CHECK(c.data.kind == DataKind::RoughSpectral);
  CHECK(c.data.seed == 3);
  CHECK_NOTHROW(c.validate());
  CHECK(make_run_config(KeyValueConfig::parse("s = 11/12\n")).s == doctest::Approx(11.0 / 12.0));
}

TEST_CASE("config errors name the key") {
  CHECK(error_of("grid.n = 1000\n").find("grid.n") == 0);
  CHECK(error_of("N = 12\n").find("N") == 0);
  CHECK(error_of("p = 5\n").find("p") == 0);
  CHECK(error_of("s = 0.5\n").find("s") == 0);
  CHECK(error_of("grid.R = abc\n").find("grid.R") == 0);
  CHECK(error_of("data.kind = noise\n").find("data.kind") == 0);
  CHECK(error_of("evolution.dt = 0.3\n").find("evolution.T") != std::string::npos);
  CHECK(error_of("N_list = 8, 4\n").find("N_list") == 0);
  CHECK(error_of("grid.radius = 3\n").find("grid.radius") == 0);
  CHECK(error_of("evolution.nonlinear = maybe\n").find("evolution.nonlinear") == 0);
  CHECK(error_of("kernel.M_list = 2\n").find("kernel.M_list") == 0);
  CHECK(error_of("").empty());
}

TEST_CASE("trajectory round trip is exact") {
  RadialGrid g(30.0, 256);
  RoughSpec spec;
  spec.seed = 9;
  EvolutionConfig c;
  c.dt = 0.02;
  c.T = 0.4;
  c.sample_stride = 4;
  const Trajectory tr = evolve(rough_spectral_data(g, spec), c);
  std::stringstream buf;
  write_trajectory(buf, tr, 0.95, 8.0);
  const TrajectoryFile back = read_trajectory(buf, c);
  CHECK(back.s == 0.95);
  CHECK(back.N == 8.0);
  REQUIRE(back.trajectory.size() == tr.size());
  CHECK(back.trajectory.grid == tr.grid);
  CHECK(back.trajectory.config.T == doctest::Approx(0.4));
  for (std::size_t i = 0; i < tr.size(); ++i) {
    CHECK(back.trajectory.times[i] == tr.times[i]);
    CHECK(back.trajectory.states[i].u.values == tr.states[i].u.values);
    CHECK(back.trajectory.states[i].ut.values == tr.states[i].ut.values);
  }
  std::stringstream again;
  write_trajectory(again, back.trajectory, back.s, back.N);
  CHECK(again.str() == buf.str());
}

TEST_CASE("corrupt trajectory files are rejected") {
  std::stringstream bad("XXXX0000");
  CHECK_THROWS_AS(read_trajectory(bad), IoError);
  RadialGrid g(30.0, 64);
  EvolutionConfig c;
  c.dt = 0.1;
  c.T = 0.2;
  std::stringstream buf;
  write_trajectory(buf, evolve(gaussian_data(g, 1.0), c), 0.95, 8.0);
  std::string text = buf.str();
  std::stringstream cut(text.substr(0, text.size() - 100));
  CHECK_THROWS_AS(read_trajectory(cut), IoError);
  CHECK_THROWS_AS(read_trajectory("/nonexistent/x.traj"), IoError);
}

TEST_CASE("run writes one CSV row per sample and is deterministic") {
  const fs::path dir = scratch("run");
  RunConfig c = make_run_config(KeyValueConfig::parse(kSmall));
  c.out_dir = dir.string();
  const RunOutputs a = cmd_run(c);
  CHECK(a.rows == 11);
  const std::string csv = slurp(a.csv_path), traj = slurp(a.trajectory_path);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 12);
  CHECK(csv.rfind("t,E_u,E_Iu,Hs_pair,", 0) == 0);
  const RunOutputs b = cmd_run(c);
  CHECK(slurp(b.csv_path) == csv);
  CHECK(slurp(b.trajectory_path) == traj);

  const nlohmann::json rep = cmd_report(c);
  CHECK(rep["samples"] == 11);
  CHECK(rep.contains("energy"));
  CHECK(rep.contains("morawetz"));
  CHECK(fs::exists(dir / "run_report.json"));
}

TEST_CASE("zero data gives zero diagnostics") {
  RunConfig c = make_run_config(KeyValueConfig::parse(kSmall));
  c.data.amplitude = 0.0;
  const Trajectory tr = evolve(c.initial_data(), c.evolution);
  for (const DiagnosticsRecord& r : diagnostics_records(tr, c)) {
    CHECK(r.E_u == 0.0);
    CHECK(r.E_Iu == 0.0);
    CHECK(r.hs_pair == 0.0);
    CHECK(r.morawetz_potential_cum == 0.0);
    CHECK(r.R1_cum == 0.0);
    CHECK(r.radial_sobolev_ratio == 0.0);
  }
}

TEST_CASE("exponents report") {
  const nlohmann::json j = exponents_json("4", "11/12");
  CHECK(j["s_threshold"]["value"]["num"] == 11);
  CHECK(j["s_threshold"]["value"]["den"] == 12);
  CHECK(j["s_threshold"]["low"] == j["s_threshold"]["high"]);
  CHECK(j["theta2"]["value"]["num"] == 1);
  CHECK(j["s_c"]["num"] == 5);
  CHECK(j["s_c"]["den"] == 6);
  CHECK_THROWS(exponents_json("5", "0.95"));
}

TEST_CASE("command line exit codes") {
  const fs::path dir = scratch("cli");
  put(dir / "ok.cfg", kSmall);
  put(dir / "bad.cfg", "grid.n = 1000\n");
  put(dir / "typo.cfg", "grid.radius = 3\n");
  const std::string out = " --out " + (dir / "out").string();
  CHECK(cli("run --config " + (dir / "ok.cfg").string() + out) == 0);
  CHECK(fs::exists(dir / "out" / "run.csv"));
  CHECK(cli("report --config " + (dir / "ok.cfg").string() + out) == 0);
  CHECK(cli("run --config " + (dir / "bad.cfg").string() + out) == 2);
  CHECK(cli("run --config " + (dir / "typo.cfg").string() + out) == 2);
  CHECK(cli("run --config " + (dir / "missing.cfg").string() + out) == 4);
  CHECK(cli("run") == 2);
  CHECK(cli("frobnicate") == 2);
  CHECK(cli("exponents --p 4 --s 11/12") == 0);
  CHECK(cli("exponents --p 5 --s 0.95") == 2);
  CHECK(cli("report --config " + (dir / "ok.cfg").string() + " --out " + (dir / "empty").string()) == 4);
  CHECK(cli("run --config " + (dir / "ok.cfg").string() + " --out /proc/nlkg_no_such_dir") == 4);

  put(dir / "blow.cfg", "grid.R = 30\ngrid.n = 256\nevolution.dt = 0.5\nevolution.T = 50\ndata.amplitude = 40\n");
  CHECK(cli("run --config " + (dir / "blow.cfg").string() + out) == 3);
}
