#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlkg/data.hpp"
#include "nlkg/exponents.hpp"
#include "nlkg/propagator.hpp"

namespace nlkg::harness {

/// Invalid configuration; the message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat "key = value" text. Blank lines and '#' comments are ignored; a line
/// "[section]" prefixes the following keys with "section.".
class KeyValueConfig {
 public:
  static KeyValueConfig parse(const std::string& text);
  static KeyValueConfig load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::optional<std::string> get(const std::string& key) const;
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
  /// Keys never read by any accessor (typos surface as config errors).
  std::vector<std::string> unused() const;

  std::string text(const std::string& key, const std::string& fallback) const;
  double real(const std::string& key, double fallback) const;
  std::uint64_t unsigned_int(const std::string& key, std::uint64_t fallback) const;
  bool boolean(const std::string& key, bool fallback) const;
  std::vector<double> real_list(const std::string& key, const std::vector<double>& fallback) const;

 private:
  std::map<std::string, std::string> values_;
  mutable std::map<std::string, bool> read_;
};

enum class DataKind { Gaussian, BandLimited, RoughSpectral, FlatSpectrum };

struct DataSpec {
  DataKind kind = DataKind::Gaussian;
  double amplitude = 1.0;
  std::uint64_t seed = 1;
  /// Rough data only; unset means s + 3/2.
  std::optional<double> spectral_slope;
  double width = 1.0;                // gaussian
  double band = 4.0;                 // band_limited
  std::optional<double> envelope = 8.0;  // rough_spectral; 0 in the file disables it
};

struct KernelSpec {
  std::vector<double> M_list{8, 16, 32};
  /// Strichartz probe horizon; 0 selects T = M.
  double T = 0.0;
  /// Extra R beyond T for the probe grid.
  double margin = 24.0;
  std::size_t n = 4096;
  std::size_t envelope_samples = 12;
};

struct RunConfig {
  double p = 4.0;
  double s = 0.95;
  double N = 16.0;
  /// Exact spellings of p and s, kept for the exponents command.
  std::string p_text = "4", s_text = "19/20";
  std::vector<double> N_list{4, 8, 16, 32};
  std::vector<double> p_list{3.5, 4.0, 4.5};
  double R = 30.0;
  std::size_t n = 1024;
  EvolutionConfig evolution;
  DataSpec data;
  bool morawetz = true;
  bool sobolev = true;
  /// Raw threshold for the L^{p+2} interval partition; 0 disables it.
  double partition_threshold = 0.0;
  std::string out_dir = ".";
  std::string tag = "run";
  KernelSpec kernel;

  /// Checks every module precondition; throws ConfigError naming the field.
  void validate() const;
  RadialGrid grid() const { return RadialGrid(R, n); }
  State initial_data() const;
};

/// Reads every known key; unknown keys are rejected.
RunConfig make_run_config(const KeyValueConfig& kv);
RunConfig load_run_config(const std::string& path);

std::string to_string(DataKind k);

}  // namespace nlkg::harness
