#pragma once

// Angle/depth sweeps over any backend. Cells sharing a depth reuse the
// lattice solution and, for the exact backend, one eigendecomposition.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "braggsim/hilbert.hpp"
#include "braggsim/spectra.hpp"

namespace braggsim {

enum class Backend { exact, mott_analytic, bogoliubov };

const char* to_string(Backend b);
std::optional<Backend> parse_backend(const std::string& name);

struct SweepCell {
  double depth = 8.1;        // V0 [hbar omega_R]
  double bragg_angle = 0.0;  // q_x d0 [rad]
  Backend backend = Backend::exact;
  bool include_j1 = true;
};

struct SweepSettings {
  LatticeConfig lattice;  // depth is overridden per cell
  double detection_time = 3e-3;
  std::optional<FrequencyGrid> grid;  // [rad/s]; default grid when absent
  Lineshape lineshape = Lineshape::diffraction;
  Boundary boundary = Boundary::periodic;
  int plane_wave_cutoff = kDefaultPlaneWaveCutoff;
  int k_count = 0;
  int points_per_period = kDefaultPointsPerPeriod;
  int threads = 0;  // 0: hardware concurrency
};

struct SweepResult {
  SweepCell cell;
  LatticeConfig lattice;
  HubbardParams params;
  CouplingCoefficients coefficients;
  Spectrum spectrum;
};

// Results follow the order of `cells` whatever the completion order.
std::vector<SweepResult> sweep(std::span<const SweepCell> cells, const SweepSettings& settings);

// One cell from an already solved lattice. `h` must be given for the exact backend.
SweepResult evaluate_cell(const SweepCell& cell, const LatticeSolution& lattice,
                          const FockBasis* basis, const HamiltonianMatrix* h,
                          const SweepSettings& settings);

}  // namespace braggsim
