#pragma once

// Serialization of sweep results: one spectrum file per (backend, V0, theta)
// cell, an intensity table and a manifest describing every resolved parameter.
// Files use omega_R for frequencies, A(Omega) for weights and pi for angles.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "braggsim/config.hpp"

namespace braggsim {

// RFC 4180 field quoting: fields with commas, quotes or line breaks are quoted.
std::string csv_field(const std::string& value);

// Shortest text that parses back to the same double.
std::string format_number(double value);

// Stem shared by the files of one cell, e.g. "exact_v0-8.1_theta-0.285714pi".
std::string cell_stem(const SweepResult& result);

nlohmann::json lines_json(const Spectrum& spectrum);
nlohmann::json cell_manifest(const SweepResult& result);
nlohmann::json spectrum_json(const SweepResult& result);  // lines, grid, broadened, manifest

void write_spectrum_csv(std::ostream& out, const SweepResult& result);
void write_intensity_csv(std::ostream& out, const std::vector<SweepResult>& results);

nlohmann::json run_manifest(const RunConfig& config, const std::vector<SweepResult>& results,
                            const std::vector<std::string>& files);

// Writes everything under config.output. Returns the list of files written,
// relative to the output directory.
std::vector<std::string> write_outputs(const RunConfig& config,
                                       const std::vector<SweepResult>& results);

// Sweep plus output. Returns the process exit status; regime warnings go to
// the manifest and to `log`.
int run(const RunConfig& config, std::ostream& log);

}  // namespace braggsim
