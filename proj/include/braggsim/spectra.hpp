#pragma once

// Spectral assembly shared by all backends. Lines carry frequency shifts
// omega_L - omega in rad/s and weights in units of the angular prefactor
// A(Omega); curves are the lines convolved with the finite-time diffraction
// function on a uniform frequency grid.

#include <optional>
#include <string>
#include <vector>

#include "braggsim/hilbert.hpp"
#include "braggsim/probe.hpp"

namespace braggsim {

enum class Lineshape {
  diffraction,    // sin(omega T/2) / (pi omega), side lobes included
  sinc_squared,   // (T / 2 pi) sinc^2(omega T/2), non-negative, unit area
};

double diffraction_kernel(double omega, double detection_time);
double sinc_squared_kernel(double omega, double detection_time);
double lineshape_value(Lineshape shape, double omega, double detection_time);

struct AngularPrefactor {
  double linewidth = 0.0;          // gamma [rad/s]
  double detuning = 0.0;           // Delta = omega_L - omega_0 [rad/s]
  double rabi_frequency = 0.0;     // Omega_0 [rad/s]
  double dipole_projection = 0.0;  // |D.n|^2 / |D|^2
};

// (gamma/c)(Omega_0^2/Delta^2)(3/8pi)(1 - projection), in 1/m.
double angular_prefactor(const AngularPrefactor& p);

struct FrequencyGrid {
  double min = 0.0;  // [rad/s]
  double max = 0.0;
  int count = 2000;

  std::vector<double> points() const;
};

// Lines below this fraction of the strongest line are ignored for grid coverage.
inline constexpr double kSignificantLine = 1e-6;
// Half-width, in units of 1/T, that a grid must leave around every line.
inline constexpr double kCoverageMargin = 10.0;

struct Spectrum {
  std::string backend;
  std::vector<SpectralLine> lines;
  std::vector<double> grid;  // [rad/s]
  std::vector<double> elastic_curve;
  std::vector<double> stokes_curve;
  double omega_recoil = 0.0;
  double detection_time = 0.0;
  Lineshape lineshape = Lineshape::diffraction;
  std::string units_note = "per A(Omega)";
  std::vector<std::string> warnings;

  double elastic_weight() const;
  double stokes_weight() const;
  const std::vector<double>& curve(Component c) const {
    return c == Component::elastic ? elastic_curve : stokes_curve;
  }
};

// [0, (U + 3J(2g+1)) omega_R] with 2000 points.
FrequencyGrid default_frequency_grid(const HubbardParams& params, double omega_recoil);

// Widens `base` so every significant line has kCoverageMargin/T of room on both
// sides, adding points so the spacing stays at or below the base spacing.
FrequencyGrid covering_grid(const FrequencyGrid& base, const std::vector<SpectralLine>& lines,
                            double detection_time);

// Fills grid and curves from the lines.
void broaden(Spectrum& spectrum, const FrequencyGrid& grid);

// Line list only (no grid): elastic |<i|T|i>|^2 at zero shift and Stokes
// |<f|T|i>|^2 at (E_f - E_i)/hbar for every excited eigenstate f.
Spectrum exact_lines(const HamiltonianMatrix& h, const ProbeOperatorMatrix& t,
                     const ProbeGeometry& geometry, double omega_recoil,
                     Lineshape lineshape = Lineshape::diffraction);

// exact_lines broadened on `grid`, or on a grid covering all significant lines.
Spectrum exact_stokes_spectrum(const HamiltonianMatrix& h, const ProbeOperatorMatrix& t,
                               const ProbeGeometry& geometry, double omega_recoil,
                               std::optional<FrequencyGrid> grid = std::nullopt,
                               Lineshape lineshape = Lineshape::diffraction);

// Assemble a spectrum from analytic lines.
Spectrum assemble_spectrum(std::string backend, std::vector<SpectralLine> lines,
                           const ProbeGeometry& geometry, double omega_recoil,
                           const FrequencyGrid& grid, Lineshape lineshape = Lineshape::diffraction);

struct IntegratedIntensity {
  double elastic = 0.0;
  double stokes = 0.0;
  double line_sum = 0.0;       // elastic + stokes
  double grid_integral = 0.0;  // trapezoid over the broadened total
};

// Throws CoverageError when the grid does not leave kCoverageMargin/T around significant lines.
IntegratedIntensity integrated_intensity(const Spectrum& spectrum);

struct Peak {
  double frequency = 0.0;  // [rad/s]
  double height = 0.0;
};

// Local maxima of a broadened component at least `min_relative_height` of the
// curve maximum and within pi/T of a line carrying at least that fraction of
// the largest line weight. Side lobes of the kernel do not qualify.
std::vector<Peak> find_peaks(const Spectrum& spectrum, Component component,
                             double min_relative_height = 0.05);

// Total weight of `component` lines within `half_width` of `center`.
double weight_within(const Spectrum& spectrum, Component component, double center,
                     double half_width);

}  // namespace braggsim
