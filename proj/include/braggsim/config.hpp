#pragma once

// Run configuration: presets, a flat key = value file and command-line flags,
// resolved in that order (later sources override earlier ones).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "braggsim/sweep.hpp"

namespace braggsim {

enum class OutputFormat { csv, json };

struct RunConfig {
  LatticeConfig lattice;
  std::string backend = "exact";  // exact | mott-analytic | bogoliubov | all
  bool include_j1 = true;
  std::vector<double> theta_grid;  // Bragg angles [rad]
  std::vector<double> v0_grid;     // depths [hbar omega_R]
  // Frequency window in units of omega_R; the default grid is used when absent.
  std::optional<double> freq_min;
  std::optional<double> freq_max;
  std::optional<int> freq_count;
  double detection_time = 3e-3;  // [s]
  std::string output = "braggsim-out";
  OutputFormat format = OutputFormat::csv;
  std::optional<std::string> preset;
  Lineshape lineshape = Lineshape::diffraction;
  Boundary boundary = Boundary::periodic;
  int threads = 0;

  std::vector<Backend> backends() const;
  // Frequency grid in rad/s, or nullopt for the per-cell default.
  std::optional<FrequencyGrid> frequency_grid() const;
  std::vector<SweepCell> cells() const;
  SweepSettings settings() const;
  // Throws ValidationError on inconsistent grids.
  void validate() const;
};

// Recognised keys (flag names without the leading dashes).
const std::vector<std::string>& config_keys();
const std::vector<std::string>& preset_names();

// Raw key/value pairs that a preset pins.
std::map<std::string, std::string> preset_values(const std::string& name);

// Applies raw key/value pairs on top of `config`. Unknown keys and malformed
// values throw UsageError naming the key.
void apply_values(RunConfig& config, const std::map<std::string, std::string>& values);

// Flat "key = value" text; '#' starts a comment.
std::map<std::string, std::string> read_config_file(const std::string& path);

// Parses argv (including an optional --config FILE). Empty arguments or a
// missing required key throw UsageError listing what is required.
RunConfig parse_config(const std::vector<std::string>& args);

// Numeric list syntax shared by --v0 and --theta-pi: "a,b,c" or "start:stop:count".
std::vector<double> parse_number_list(const std::string& key, const std::string& text);

}  // namespace braggsim
