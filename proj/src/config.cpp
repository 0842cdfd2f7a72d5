#include "braggsim/config.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "braggsim/errors.hpp"

namespace braggsim {

namespace {

using units::kPi;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& raw) {
  const std::string text = trim(raw);
  // Rationals such as 2/7 keep preset angles exact.
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const double num = parse_double(key, text.substr(0, slash));
    const double den = parse_double(key, text.substr(slash + 1));
    if (den == 0.0) throw UsageError("--" + key + ": zero denominator in '" + text + "'");
    return num / den;
  }
  double value = 0.0;
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw UsageError("--" + key + ": expected a number, got '" + raw + "'");
  }
  return value;
}

int parse_int(const std::string& key, const std::string& raw) {
  const std::string text = trim(raw);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError("--" + key + ": expected an integer, got '" + raw + "'");
  }
  return value;
}

bool parse_bool(const std::string& key, const std::string& raw) {
  const std::string text = trim(raw);
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw UsageError("--" + key + ": expected true or false, got '" + raw + "'");
}

std::map<std::string, std::string> common_preset() {
  return {{"sites", "7"},        {"atoms", "7"},       {"d0-nm", "413"},
          {"as-bohr", "105"},    {"omega-r", "10"},    {"t-detect-ms", "3"},
          {"backend", "exact"},  {"mass-amu", "86.909180527"}};
}

std::string describe(const std::string& key) {
  static const std::map<std::string, std::string> text = {
      {"preset", "named configuration: fig2a..fig2d, fig3a..fig3c, fig4, fig5a, fig5b, fig6"},
      {"v0", "lattice depth(s) in hbar omega_R: a, a,b,c or start:stop:count"},
      {"sites", "number of lattice sites M"},
      {"atoms", "number of atoms N"},
      {"d0-nm", "lattice spacing in nm"},
      {"as-bohr", "s-wave scattering length in Bohr radii"},
      {"omega-r", "transverse trap frequency in omega_R"},
      {"theta-pi", "Bragg angle(s) q d0 in units of pi; fractions like 2/7 allowed"},
      {"backend", "exact | mott-analytic | bogoliubov | all"},
      {"t-detect-ms", "detection time T in ms"},
      {"freq-min", "lower edge of the frequency grid in omega_R"},
      {"freq-max", "upper edge of the frequency grid in omega_R"},
      {"freq-count", "number of frequency points"},
      {"out", "output directory"},
      {"format", "csv | json"},
      {"lineshape", "diffraction | sinc2"},
      {"boundary", "periodic | open"},
      {"mass-amu", "atomic mass in u"},
      {"threads", "worker threads, 0 for all cores"},
  };
  const auto it = text.find(key);
  return it == text.end() ? std::string{} : it->second;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "preset",      "v0",       "sites",      "atoms",      "d0-nm",
      "as-bohr",     "omega-r",  "theta-pi",   "backend",    "no-light-hopping",
      "t-detect-ms", "freq-min", "freq-max",   "freq-count", "out",
      "format",      "lineshape", "boundary",  "mass-amu",   "threads"};
  return keys;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"fig2a", "fig2b", "fig2c", "fig2d", "fig3a",
                                                 "fig3b", "fig3c", "fig4",  "fig5a", "fig5b",
                                                 "fig6"};
  return names;
}

std::map<std::string, std::string> preset_values(const std::string& name) {
  auto v = common_preset();
  const std::string mott = "8.1";
  const std::string superfluid = "0.1";
  const std::string depth_sweep = "0.1:8.1:17";
  if (name == "fig2a") {
    v["v0"] = mott;
    v["theta-pi"] = "2/7";
  } else if (name == "fig2b") {
    v["v0"] = superfluid;
    v["theta-pi"] = "2/7";
  } else if (name == "fig2c") {
    v["v0"] = mott;
    v["theta-pi"] = "6/7";
  } else if (name == "fig2d") {
    v["v0"] = superfluid;
    v["theta-pi"] = "6/7";
  } else if (name == "fig3a" || name == "fig3b" || name == "fig3c") {
    v["v0"] = name == "fig3a" ? mott : superfluid;
    v["theta-pi"] = "0:2:29";
    // U/J ~ 0.1 at the shallow depth: interactions tuned down through a_s.
    if (name == "fig3c") v["as-bohr"] = "10.5";
  } else if (name == "fig4") {
    v["v0"] = depth_sweep;
    v["theta-pi"] = "6/7";
  } else if (name == "fig5a" || name == "fig5b") {
    v["v0"] = name == "fig5a" ? mott : superfluid;
    v["theta-pi"] = "0:2:101";
  } else if (name == "fig6") {
    v["v0"] = depth_sweep;
    v["theta-pi"] = "0:2:51";
  } else {
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw UsageError("--preset: unknown preset '" + name + "' (known: " + known + ")");
  }
  return v;
}

std::vector<double> parse_number_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  const std::string body = trim(text);
  if (body.empty()) throw UsageError("--" + key + ": empty list");
  if (std::count(body.begin(), body.end(), ':') == 2) {
    const auto a = body.find(':');
    const auto b = body.find(':', a + 1);
    const double start = parse_double(key, body.substr(0, a));
    const double stop = parse_double(key, body.substr(a + 1, b - a - 1));
    const int count = parse_int(key, body.substr(b + 1));
    if (count < 1) throw UsageError("--" + key + ": range needs a positive count");
    if (count == 1) return {start};
    for (int i = 0; i < count; ++i) out.push_back(start + (stop - start) * i / (count - 1));
    out.back() = stop;
    return out;
  }
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
  return out;
}

void apply_values(RunConfig& c, const std::map<std::string, std::string>& values) {
  const auto& keys = config_keys();
  for (const auto& [key, value] : values) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw UsageError("unknown key '" + key + "'");
    }
    if (key == "preset") {
      c.preset = trim(value);
    } else if (key == "v0") {
      c.v0_grid = parse_number_list(key, value);
    } else if (key == "sites") {
      c.lattice.sites = parse_int(key, value);
    } else if (key == "atoms") {
      c.lattice.atoms = parse_int(key, value);
    } else if (key == "d0-nm") {
      c.lattice.spacing = parse_double(key, value) * 1e-9;
    } else if (key == "as-bohr") {
      c.lattice.scattering_length = parse_double(key, value) * units::kBohrRadius;
    } else if (key == "omega-r") {
      c.lattice.transverse_frequency = parse_double(key, value);
    } else if (key == "theta-pi") {
      c.theta_grid = parse_number_list(key, value);
      for (auto& t : c.theta_grid) t *= kPi;
    } else if (key == "backend") {
      const std::string name = trim(value);
      if (name != "all" && !parse_backend(name)) {
        throw UsageError("--backend: expected exact, mott-analytic, bogoliubov or all, got '" +
                         value + "'");
      }
      c.backend = name;
    } else if (key == "no-light-hopping") {
      c.include_j1 = !parse_bool(key, value);
    } else if (key == "t-detect-ms") {
      c.detection_time = parse_double(key, value) * 1e-3;
    } else if (key == "freq-min") {
      c.freq_min = parse_double(key, value);
    } else if (key == "freq-max") {
      c.freq_max = parse_double(key, value);
    } else if (key == "freq-count") {
      c.freq_count = parse_int(key, value);
    } else if (key == "out") {
      c.output = trim(value);
    } else if (key == "format") {
      const std::string f = trim(value);
      if (f == "csv") c.format = OutputFormat::csv;
      else if (f == "json") c.format = OutputFormat::json;
      else throw UsageError("--format: expected csv or json, got '" + value + "'");
    } else if (key == "lineshape") {
      const std::string f = trim(value);
      if (f == "diffraction") c.lineshape = Lineshape::diffraction;
      else if (f == "sinc2") c.lineshape = Lineshape::sinc_squared;
      else throw UsageError("--lineshape: expected diffraction or sinc2, got '" + value + "'");
    } else if (key == "boundary") {
      const std::string f = trim(value);
      if (f == "periodic") c.boundary = Boundary::periodic;
      else if (f == "open") c.boundary = Boundary::open;
      else throw UsageError("--boundary: expected periodic or open, got '" + value + "'");
    } else if (key == "mass-amu") {
      c.lattice.mass = parse_double(key, value) * units::kAtomicMassUnit;
    } else if (key == "threads") {
      c.threads = parse_int(key, value);
    }
  }
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("--config: cannot open '" + path + "'");
  std::map<std::string, std::string> values;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(number) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw UsageError(path + ":" + std::to_string(number) + ": unknown key '" + key + "'");
    }
    values[key] = trim(line.substr(eq + 1));
  }
  return values;
}

std::vector<Backend> RunConfig::backends() const {
  if (backend == "all") return {Backend::exact, Backend::mott_analytic, Backend::bogoliubov};
  return {*parse_backend(backend)};
}

std::optional<FrequencyGrid> RunConfig::frequency_grid() const {
  if (!freq_min && !freq_max) return std::nullopt;
  const double omega_r = lattice.recoil_frequency();
  return FrequencyGrid{*freq_min * omega_r, *freq_max * omega_r, freq_count.value_or(2000)};
}

void RunConfig::validate() const {
  if (theta_grid.empty()) throw ValidationError("theta grid is empty");
  if (v0_grid.empty()) throw ValidationError("depth grid is empty");
  if (freq_min.has_value() != freq_max.has_value()) {
    throw ValidationError("freq-min and freq-max must be given together");
  }
  if (freq_min && !(*freq_max > *freq_min)) {
    throw ValidationError("freq-max must exceed freq-min");
  }
  if (freq_count && *freq_count < 2) throw ValidationError("freq-count must be at least 2");
  if (!(detection_time > 0.0)) throw ValidationError("t-detect-ms must be positive");
  if (threads < 0) throw ValidationError("threads must be non-negative");
  for (double v0 : v0_grid) {
    if (!(v0 > 0.0)) throw ValidationError("lattice depths must be positive");
  }
  try {
    LatticeConfig probe = lattice;
    probe.depth = v0_grid.front();
    probe.validate();
  } catch (const DomainError& e) {
    throw ValidationError(e.what());
  }
}

std::vector<SweepCell> RunConfig::cells() const {
  std::vector<SweepCell> out;
  for (Backend b : backends()) {
    for (double v0 : v0_grid) {
      for (double theta : theta_grid) out.push_back({v0, theta, b, include_j1});
    }
  }
  return out;
}

SweepSettings RunConfig::settings() const {
  SweepSettings s;
  s.lattice = lattice;
  s.detection_time = detection_time;
  s.grid = frequency_grid();
  s.lineshape = lineshape;
  s.boundary = boundary;
  s.threads = threads;
  return s;
}

RunConfig parse_config(const std::vector<std::string>& args) {
  const auto& keys = config_keys();
  std::map<std::string, std::string> raw;
  std::map<std::string, CLI::Option*> options;
  bool no_light_hopping = false;
  std::string config_path;

  CLI::App app{"Bragg-scattering spectra of bosons in a 1D optical lattice", "braggsim"};
  for (const auto& key : keys) {
    if (key == "no-light-hopping") {
      options[key] = app.add_flag("--" + key, no_light_hopping, "drop the light-induced hopping term");
    } else {
      options[key] = app.add_option("--" + key, raw[key], describe(key));
    }
  }
  app.add_option("--config", config_path, "flat key = value file; flags override it");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw UsageError(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  std::map<std::string, std::string> from_file;
  if (!config_path.empty()) from_file = read_config_file(config_path);
  std::map<std::string, std::string> from_cli;
  for (const auto& key : keys) {
    if (options[key]->count() == 0) continue;
    from_cli[key] = key == "no-light-hopping" ? (no_light_hopping ? "true" : "false") : raw[key];
  }

  RunConfig config;
  std::optional<std::string> preset;
  if (from_file.count("preset")) preset = trim(from_file["preset"]);
  if (from_cli.count("preset")) preset = trim(from_cli["preset"]);
  if (preset) apply_values(config, preset_values(*preset));
  apply_values(config, from_file);
  apply_values(config, from_cli);

  std::vector<std::string> missing;
  if (config.v0_grid.empty()) missing.push_back("--v0");
  if (config.theta_grid.empty()) missing.push_back("--theta-pi");
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw UsageError("missing required keys: " + list + " (or give --preset)");
  }
  config.validate();
  return config;
}

}  // namespace braggsim
