#include "braggsim/output.hpp"

#include <charconv>
#include <fstream>
#include <ostream>

#include "braggsim/errors.hpp"

namespace braggsim {

namespace fs = std::filesystem;
using nlohmann::json;
using units::kPi;

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

namespace {

const char* lineshape_name(Lineshape s) {
  return s == Lineshape::diffraction ? "diffraction" : "sinc2";
}

std::string backend_name(const SweepResult& r) { return to_string(r.cell.backend); }

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

}  // namespace

std::string cell_stem(const SweepResult& r) {
  std::string stem = backend_name(r);
  if (!r.cell.include_j1) stem += "-noj1";
  return stem + "_v0-" + format_number(r.cell.depth) + "_theta-" +
         format_number(r.cell.bragg_angle / kPi) + "pi";
}

json lines_json(const Spectrum& spectrum) {
  const double omega_r = spectrum.omega_recoil;
  json lines = json::array();
  for (const auto& line : spectrum.lines) {
    lines.push_back({{"component", to_string(line.component)},
                     {"label", line.label},
                     {"omega_over_omegaR", line.frequency / omega_r},
                     {"weight", line.weight}});
  }
  return lines;
}

json cell_manifest(const SweepResult& r) {
  const auto& p = r.params;
  const auto& c = r.lattice;
  const double omega_r = c.recoil_frequency();
  return {
      {"backend", backend_name(r)},
      {"include_j1", r.cell.include_j1},
      {"v0_hbar_omegaR", r.cell.depth},
      {"theta_over_pi", r.cell.bragg_angle / kPi},
      {"J_hbar_omegaR", p.J},
      {"J_from_dispersion_hbar_omegaR", p.J_dispersion},
      {"U_hbar_omegaR", p.U},
      {"U_over_J", p.U / p.J},
      {"mu_hbar_omegaR", p.mu},
      {"filling", p.filling()},
      {"sites", c.sites},
      {"atoms", c.atoms},
      {"d0_m", c.spacing},
      {"mass_kg", c.mass},
      {"a_s_m", c.scattering_length},
      {"a_s_bohr", c.scattering_length / units::kBohrRadius},
      {"omega_r_over_omegaR", c.transverse_frequency},
      {"xi_r_m", c.transverse_length()},
      {"xi_r_over_a_s", c.transverse_length() / c.scattering_length},
      {"omega_R_rad_per_s", omega_r},
      {"T_detect_s", r.spectrum.detection_time},
      {"lineshape", lineshape_name(r.spectrum.lineshape)},
      {"J0", complex_json(r.coefficients.j0)},
      {"J1", complex_json(r.coefficients.j1)},
      {"elastic_weight", r.spectrum.elastic_weight()},
      {"stokes_weight", r.spectrum.stokes_weight()},
      {"units", r.spectrum.units_note},
      {"warnings", r.spectrum.warnings},
  };
}

json spectrum_json(const SweepResult& r) {
  const double omega_r = r.spectrum.omega_recoil;
  json grid = json::array();
  for (double w : r.spectrum.grid) grid.push_back(w / omega_r);
  return {{"lines", lines_json(r.spectrum)},
          {"grid", grid},
          {"broadened", {{"elastic", r.spectrum.elastic_curve}, {"stokes", r.spectrum.stokes_curve}}},
          {"manifest", cell_manifest(r)}};
}

void write_spectrum_csv(std::ostream& out, const SweepResult& r) {
  const auto& s = r.spectrum;
  const std::string backend = csv_field(backend_name(r));
  out << "omega_over_omegaR,sigma_per_A,component,backend\n";
  for (Component c : {Component::elastic, Component::stokes}) {
    const auto& curve = s.curve(c);
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
      out << format_number(s.grid[i] / s.omega_recoil) << ',' << format_number(curve[i]) << ','
          << to_string(c) << ',' << backend << '\n';
    }
  }
}

void write_intensity_csv(std::ostream& out, const std::vector<SweepResult>& results) {
  out << "backend,include_j1,v0,theta_over_pi,elastic,stokes,total,grid_integral\n";
  for (const auto& r : results) {
    const double elastic = r.spectrum.elastic_weight();
    const double stokes = r.spectrum.stokes_weight();
    std::string grid_integral;
    try {
      grid_integral = format_number(integrated_intensity(r.spectrum).grid_integral);
    } catch (const CoverageError&) {
      // A user grid that clips lines still has an exact line sum.
    }
    out << csv_field(backend_name(r)) << ',' << (r.cell.include_j1 ? "true" : "false") << ','
        << format_number(r.cell.depth) << ',' << format_number(r.cell.bragg_angle / kPi) << ','
        << format_number(elastic) << ',' << format_number(stokes) << ','
        << format_number(elastic + stokes) << ',' << grid_integral << '\n';
  }
}

json run_manifest(const RunConfig& config, const std::vector<SweepResult>& results,
                  const std::vector<std::string>& files) {
  json cells = json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    auto m = cell_manifest(results[i]);
    m["file"] = files[i];
    cells.push_back(std::move(m));
  }
  json run = {
      {"preset", config.preset ? json(*config.preset) : json(nullptr)},
      {"backend", config.backend},
      {"include_j1", config.include_j1},
      {"format", config.format == OutputFormat::csv ? "csv" : "json"},
      {"lineshape", lineshape_name(config.lineshape)},
      {"boundary", config.boundary == Boundary::periodic ? "periodic" : "open"},
      {"T_detect_s", config.detection_time},
      {"units", {{"frequency", "omega_R"}, {"weight", "A(Omega)"}, {"angle", "pi"}}},
  };
  if (auto grid = config.frequency_grid()) {
    const double omega_r = config.lattice.recoil_frequency();
    run["freq_grid_omegaR"] = {grid->min / omega_r, grid->max / omega_r, grid->count};
  } else {
    run["freq_grid_omegaR"] = "default";
  }
  return {{"run", run}, {"cells", cells}, {"intensity", "intensity.csv"}};
}

std::vector<std::string> write_outputs(const RunConfig& config,
                                       const std::vector<SweepResult>& results) {
  const fs::path dir(config.output);
  fs::create_directories(dir);
  auto open = [&](const std::string& name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw Error("cannot write " + (dir / name).string());
    return out;
  };

  std::vector<std::string> files;
  for (const auto& r : results) {
    const std::string stem = cell_stem(r);
    if (config.format == OutputFormat::csv) {
      auto csv = open(stem + ".csv");
      write_spectrum_csv(csv, r);
      auto sidecar = open(stem + ".lines.json");
      sidecar << json{{"lines", lines_json(r.spectrum)}, {"manifest", cell_manifest(r)}}.dump(1)
              << '\n';
      files.push_back(stem + ".csv");
    } else {
      auto out = open(stem + ".json");
      out << spectrum_json(r).dump(1) << '\n';
      files.push_back(stem + ".json");
    }
  }
  {
    auto out = open("intensity.csv");
    write_intensity_csv(out, results);
  }
  {
    auto out = open("manifest.json");
    out << run_manifest(config, results, files).dump(2) << '\n';
  }
  return files;
}

int run(const RunConfig& config, std::ostream& log) {
  config.validate();
  const auto cells = config.cells();
  const auto results = sweep(cells, config.settings());
  const auto files = write_outputs(config, results);
  for (std::size_t i = 0; i < results.size(); ++i) {
    for (const auto& w : results[i].spectrum.warnings) log << "warning: " << files[i] << ": " << w << '\n';
  }
  log << "wrote " << files.size() << " spectra, intensity.csv and manifest.json to "
      << config.output << '\n';
  return 0;
}

}  // namespace braggsim
