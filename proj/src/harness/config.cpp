#include "nlkg/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "nlkg/functionals.hpp"
#include "nlkg/multiplier.hpp"

namespace nlkg::harness {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& v) {
  try {
    return parse_rational(v).convert_to<double>();
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
}

template <class F>
void check(bool ok, const std::string& key, F&& message) {
  if (!ok) throw ConfigError(key + ": " + message());
}

void check(bool ok, const std::string& key, const char* message) {
  if (!ok) throw ConfigError(key + ": " + message);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(const std::string& text) {
  KeyValueConfig kv;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (!section.empty()) key = section + "." + key;
    if (kv.values_.count(key)) throw ConfigError(key + ": duplicate key");
    kv.values_[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
  read_[key] = true;
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> KeyValueConfig::unused() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : values_) {
    if (!read_.count(k)) out.push_back(k);
  }
  return out;
}

std::string KeyValueConfig::text(const std::string& key, const std::string& fallback) const {
  return get(key).value_or(fallback);
}

double KeyValueConfig::real(const std::string& key, double fallback) const {
  const auto v = get(key);
  return v ? parse_real(key, *v) : fallback;
}

std::uint64_t KeyValueConfig::unsigned_int(const std::string& key, std::uint64_t fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  std::size_t pos = 0;
  unsigned long long x = 0;
  try {
    if (!v->empty() && v->front() == '-') throw std::invalid_argument("negative");
    x = std::stoull(*v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != v->size()) throw ConfigError(key + ": expected a non-negative integer, got '" + *v + "'");
  return x;
}

bool KeyValueConfig::boolean(const std::string& key, bool fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes" || *v == "on") return true;
  if (*v == "false" || *v == "0" || *v == "no" || *v == "off") return false;
  throw ConfigError(key + ": expected a boolean, got '" + *v + "'");
}

std::vector<double> KeyValueConfig::real_list(const std::string& key, const std::vector<double>& fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  std::vector<double> out;
  std::stringstream ss(*v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError(key + ": empty list entry");
    out.push_back(parse_real(key, item));
  }
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

std::string to_string(DataKind k) {
  switch (k) {
    case DataKind::Gaussian: return "gaussian";
    case DataKind::BandLimited: return "band_limited";
    case DataKind::RoughSpectral: return "rough_spectral";
    case DataKind::FlatSpectrum: return "flat_spectrum";
  }
  return "?";
}

RunConfig make_run_config(const KeyValueConfig& kv) {
  RunConfig c;
  c.p_text = kv.text("p", c.p_text);
  c.s_text = kv.text("s", c.s_text);
  c.p = parse_real("p", c.p_text);
  c.s = parse_real("s", c.s_text);
  c.N = kv.real("N", c.N);
  c.N_list = kv.real_list("N_list", c.N_list);
  c.p_list = kv.real_list("p_list", c.p_list);
  c.R = kv.real("grid.R", c.R);
  c.n = kv.unsigned_int("grid.n", c.n);

  EvolutionConfig& e = c.evolution;
  e.p = c.p;
  e.dt = kv.real("evolution.dt", e.dt);
  e.T = kv.real("evolution.T", e.T);
  e.sample_stride = kv.unsigned_int("evolution.sample_stride", e.sample_stride);
  e.dealias_pad = kv.unsigned_int("evolution.dealias_pad", e.dealias_pad);
  e.boundary_guard = kv.real("evolution.boundary_guard", e.boundary_guard);
  e.nonlinear = kv.boolean("evolution.nonlinear", e.nonlinear);

  DataSpec& d = c.data;
  const std::string kind = kv.text("data.kind", "gaussian");
  if (kind == "gaussian") {
    d.kind = DataKind::Gaussian;
  } else if (kind == "band_limited") {
    d.kind = DataKind::BandLimited;
  } else if (kind == "rough_spectral") {
    d.kind = DataKind::RoughSpectral;
  } else if (kind == "flat_spectrum") {
    d.kind = DataKind::FlatSpectrum;
  } else {
    throw ConfigError("data.kind: expected gaussian|band_limited|rough_spectral|flat_spectrum, got '" + kind + "'");
  }
  d.amplitude = kv.real("data.amplitude", d.amplitude);
  d.seed = kv.unsigned_int("data.seed", d.seed);
  if (kv.has("data.spectral_slope")) d.spectral_slope = kv.real("data.spectral_slope", 0.0);
  d.width = kv.real("data.width", d.width);
  d.band = kv.real("data.band", d.band);
  if (kv.has("data.envelope")) {
    const double env = kv.real("data.envelope", 0.0);
    d.envelope = env == 0.0 ? std::nullopt : std::optional<double>(env);
  }

  c.morawetz = kv.boolean("diagnostics.morawetz", c.morawetz);
  c.sobolev = kv.boolean("diagnostics.sobolev", c.sobolev);
  c.partition_threshold = kv.real("diagnostics.partition_threshold", c.partition_threshold);
  c.out_dir = kv.text("output.dir", c.out_dir);
  c.tag = kv.text("output.tag", c.tag);

  KernelSpec& k = c.kernel;
  k.M_list = kv.real_list("kernel.M_list", k.M_list);
  k.T = kv.real("kernel.T", k.T);
  k.margin = kv.real("kernel.margin", k.margin);
  k.n = kv.unsigned_int("kernel.n", k.n);
  k.envelope_samples = kv.unsigned_int("kernel.envelope_samples", k.envelope_samples);

  const auto unknown = kv.unused();
  if (!unknown.empty()) throw ConfigError(unknown.front() + ": unknown key");
  return c;
}

RunConfig load_run_config(const std::string& path) { return make_run_config(KeyValueConfig::load(path)); }

void RunConfig::validate() const {
  check(std::isfinite(p) && p > 3.0 && p < 5.0, "p", "must satisfy 3 < p < 5");
  check(std::isfinite(s) && s > 0.0 && s < 1.0, "s", "must satisfy 0 < s < 1");
  check(s > critical_exponent(p), "s", [&] { return "must exceed s_c(p) = " + std::to_string(critical_exponent(p)); });
  check(is_dyadic(N) && N > 1.0, "N", "must be a dyadic number > 1");
  for (std::size_t i = 0; i < N_list.size(); ++i) {
    check(is_dyadic(N_list[i]) && N_list[i] > 1.0, "N_list", "entries must be dyadic numbers > 1");
    check(i == 0 || N_list[i] > N_list[i - 1], "N_list", "must be increasing");
  }
  for (double q : p_list) {
    check(q > 3.0 && q < 5.0, "p_list", "entries must satisfy 3 < p < 5");
    check(s > critical_exponent(q), "p_list", [&] { return "s must exceed s_c(p) for p = " + std::to_string(q); });
  }
  check(std::isfinite(R) && R > 0.0, "grid.R", "must be positive");
  check(n >= 8 && is_power_of_two(n), "grid.n", "must be a power of two >= 8");
  try {
    evolution.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  check(std::isfinite(data.amplitude), "data.amplitude", "must be finite");
  check(!data.spectral_slope || *data.spectral_slope > 0.0, "data.spectral_slope", "must be positive");
  check(data.width > 0.0, "data.width", "must be positive");
  check(data.band > 0.0, "data.band", "must be positive");
  check(!data.envelope || *data.envelope > 0.0, "data.envelope", "must be positive (0 disables)");
  check(partition_threshold >= 0.0, "diagnostics.partition_threshold", "must be >= 0");
  check(!tag.empty() && tag.find('/') == std::string::npos, "output.tag", "must be a plain file stem");
  for (double M : kernel.M_list) check(is_dyadic(M) && M >= 4.0, "kernel.M_list", "entries must be dyadic and >= 4");
  check(kernel.T >= 0.0, "kernel.T", "must be >= 0");
  check(kernel.margin > 0.0, "kernel.margin", "must be positive");
  check(kernel.n >= 8 && is_power_of_two(kernel.n), "kernel.n", "must be a power of two >= 8");
  check(kernel.envelope_samples >= 3, "kernel.envelope_samples", "must be >= 3");
}

State RunConfig::initial_data() const {
  const RadialGrid g = grid();
  switch (data.kind) {
    case DataKind::Gaussian: return gaussian_data(g, data.amplitude, data.width);
    case DataKind::BandLimited: return band_limited_data(g, data.amplitude, data.band);
    case DataKind::FlatSpectrum: return flat_spectrum_data(g, data.amplitude);
    case DataKind::RoughSpectral: {
      RoughSpec r;
      r.amplitude = data.amplitude;
      r.slope = data.spectral_slope.value_or(s + 1.5);
      r.seed = data.seed;
      r.envelope = data.envelope;
      return rough_spectral_data(g, r);
    }
  }
  throw ConfigError("data.kind: unsupported");
}

}  // namespace nlkg::harness
