#include "braggsim/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "braggsim/errors.hpp"

namespace braggsim {

using units::kPi;

void ProbeGeometry::validate() const {
  if (!(detection_time > 0.0)) throw DomainError("detection time must be positive");
}

double bloch_momentum_factor(double qx, double spacing, int sites) {
  if (sites < 1) throw DomainError("grating factor needs at least one site");
  // Both sin^2 factors are 2 pi periodic in q d0, so reduce to [-pi, pi].
  const double delta = std::remainder(qx * spacing, 2.0 * kPi);
  if (std::abs(delta) < 1e-9) return 1.0;
  const double ratio = std::sin(0.5 * sites * delta) / (sites * std::sin(0.5 * delta));
  return ratio * ratio;
}

double diffraction_kernel(double omega, double detection_time) {
  const double x = 0.5 * omega * detection_time;
  if (std::abs(x) < 1e-8) return detection_time / (2.0 * kPi);
  return std::sin(x) / (kPi * omega);
}

double sinc_squared_kernel(double omega, double detection_time) {
  const double x = 0.5 * omega * detection_time;
  const double sinc = std::abs(x) < 1e-8 ? 1.0 : std::sin(x) / x;
  return detection_time / (2.0 * kPi) * sinc * sinc;
}

double lineshape_value(Lineshape shape, double omega, double detection_time) {
  return shape == Lineshape::diffraction ? diffraction_kernel(omega, detection_time)
                                         : sinc_squared_kernel(omega, detection_time);
}

double angular_prefactor(const AngularPrefactor& p) {
  if (p.detuning == 0.0) throw ResonanceError("zero detuning: outside the dispersive regime");
  if (p.dipole_projection < 0.0 || p.dipole_projection > 1.0) {
    throw DomainError("dipole projection must lie in [0, 1]");
  }
  const double ratio = p.rabi_frequency / p.detuning;
  return p.linewidth / units::kSpeedOfLight * ratio * ratio * 3.0 / (8.0 * kPi) *
         (1.0 - p.dipole_projection);
}

std::vector<double> FrequencyGrid::points() const {
  if (count < 2) throw DomainError("frequency grid needs at least two points");
  if (!(max > min)) throw DomainError("frequency grid needs max > min");
  std::vector<double> out(count);
  const double step = (max - min) / (count - 1);
  for (int i = 0; i < count; ++i) out[i] = min + step * i;
  out.back() = max;
  return out;
}

double Spectrum::elastic_weight() const {
  double sum = 0.0;
  for (const auto& line : lines) {
    if (line.component == Component::elastic) sum += line.weight;
  }
  return sum;
}

double Spectrum::stokes_weight() const {
  double sum = 0.0;
  for (const auto& line : lines) {
    if (line.component == Component::stokes) sum += line.weight;
  }
  return sum;
}

FrequencyGrid default_frequency_grid(const HubbardParams& params, double omega_recoil) {
  FrequencyGrid grid;
  grid.min = 0.0;
  grid.max = (params.U + 3.0 * params.J * (2.0 * params.filling() + 1.0)) * omega_recoil;
  grid.count = 2000;
  return grid;
}

namespace {

double largest_weight(const std::vector<SpectralLine>& lines) {
  double largest = 0.0;
  for (const auto& line : lines) largest = std::max(largest, std::abs(line.weight));
  return largest;
}

}  // namespace

FrequencyGrid covering_grid(const FrequencyGrid& base, const std::vector<SpectralLine>& lines,
                            double detection_time) {
  const double margin = kCoverageMargin / detection_time;
  const double threshold = kSignificantLine * largest_weight(lines);
  FrequencyGrid grid = base;
  for (const auto& line : lines) {
    if (std::abs(line.weight) < threshold || line.weight == 0.0) continue;
    grid.min = std::min(grid.min, line.frequency - margin);
    grid.max = std::max(grid.max, line.frequency + margin);
  }
  if (!(grid.max > grid.min)) grid.max = grid.min + 2.0 * margin;
  const double base_step =
      base.count > 1 && base.max > base.min ? (base.max - base.min) / (base.count - 1) : margin / 20;
  // At least 16 samples per 2 pi / T so the kernel main lobe is resolved.
  const double step = std::min(base_step, 2.0 * kPi / detection_time / 16.0);
  grid.count = std::max(base.count, static_cast<int>(std::ceil((grid.max - grid.min) / step)) + 1);
  return grid;
}

void broaden(Spectrum& spectrum, const FrequencyGrid& grid) {
  spectrum.grid = grid.points();
  const std::size_t n = spectrum.grid.size();
  spectrum.elastic_curve.assign(n, 0.0);
  spectrum.stokes_curve.assign(n, 0.0);
  for (const auto& line : spectrum.lines) {
    if (line.weight == 0.0) continue;
    auto& curve = line.component == Component::elastic ? spectrum.elastic_curve
                                                       : spectrum.stokes_curve;
    for (std::size_t i = 0; i < n; ++i) {
      curve[i] += line.weight * lineshape_value(spectrum.lineshape, spectrum.grid[i] - line.frequency,
                                                spectrum.detection_time);
    }
  }
}

Spectrum exact_lines(const HamiltonianMatrix& h, const ProbeOperatorMatrix& t,
                     const ProbeGeometry& geometry, double omega_recoil, Lineshape lineshape) {
  geometry.validate();
  if (h.dimension() != t.dimension() || h.sites != t.sites || h.atoms != t.atoms) {
    throw ShapeError("Hamiltonian and probe operator live on different bases");
  }
  if (h.eigenvalues.size() != h.dimension()) {
    throw ShapeError("Hamiltonian carries no eigendecomposition");
  }
  const auto ground = ground_state(h);
  const Eigen::VectorXcd driven = t.entries * ground.vector.cast<std::complex<double>>();
  const Eigen::VectorXcd amplitudes =
      h.eigenvectors.transpose().cast<std::complex<double>>() * driven;

  Spectrum spectrum;
  spectrum.backend = "exact";
  spectrum.omega_recoil = omega_recoil;
  spectrum.detection_time = geometry.detection_time;
  spectrum.lineshape = lineshape;
  if (ground.degenerate_with) {
    spectrum.warnings.push_back("ground state degenerate within 1e-10 (levels " +
                                std::to_string(ground.degenerate_with->first) + ", " +
                                std::to_string(ground.degenerate_with->second) + ")");
  }

  spectrum.lines.reserve(static_cast<std::size_t>(h.dimension()));
  spectrum.lines.push_back({Component::elastic, 0.0, std::norm(amplitudes(0)), "exact f=0"});
  for (Eigen::Index f = 1; f < h.dimension(); ++f) {
    spectrum.lines.push_back({Component::stokes, (h.eigenvalues(f) - ground.energy) * omega_recoil,
                              std::norm(amplitudes(f)), "exact f=" + std::to_string(f)});
  }
  return spectrum;
}

Spectrum exact_stokes_spectrum(const HamiltonianMatrix& h, const ProbeOperatorMatrix& t,
                               const ProbeGeometry& geometry, double omega_recoil,
                               std::optional<FrequencyGrid> grid, Lineshape lineshape) {
  auto spectrum = exact_lines(h, t, geometry, omega_recoil, lineshape);
  const FrequencyGrid used =
      grid ? *grid
           : covering_grid(FrequencyGrid{0.0, 0.0, 2000}, spectrum.lines, geometry.detection_time);
  broaden(spectrum, used);
  return spectrum;
}

Spectrum assemble_spectrum(std::string backend, std::vector<SpectralLine> lines,
                           const ProbeGeometry& geometry, double omega_recoil,
                           const FrequencyGrid& grid, Lineshape lineshape) {
  geometry.validate();
  Spectrum spectrum;
  spectrum.backend = std::move(backend);
  spectrum.lines = std::move(lines);
  spectrum.omega_recoil = omega_recoil;
  spectrum.detection_time = geometry.detection_time;
  spectrum.lineshape = lineshape;
  broaden(spectrum, grid);
  return spectrum;
}

IntegratedIntensity integrated_intensity(const Spectrum& spectrum) {
  IntegratedIntensity out;
  out.elastic = spectrum.elastic_weight();
  out.stokes = spectrum.stokes_weight();
  out.line_sum = out.elastic + out.stokes;

  if (spectrum.grid.size() < 2) throw CoverageError("spectrum has no frequency grid");
  const double margin = kCoverageMargin / spectrum.detection_time;
  const double threshold = kSignificantLine * largest_weight(spectrum.lines);
  for (const auto& line : spectrum.lines) {
    if (line.weight == 0.0 || std::abs(line.weight) < threshold) continue;
    if (line.frequency - margin < spectrum.grid.front() ||
        line.frequency + margin > spectrum.grid.back()) {
      throw CoverageError("frequency grid does not cover the line at " +
                          std::to_string(line.frequency) + " rad/s with 10/T margin");
    }
  }
  double integral = 0.0;
  for (std::size_t i = 1; i < spectrum.grid.size(); ++i) {
    const double left = spectrum.elastic_curve[i - 1] + spectrum.stokes_curve[i - 1];
    const double right = spectrum.elastic_curve[i] + spectrum.stokes_curve[i];
    integral += 0.5 * (left + right) * (spectrum.grid[i] - spectrum.grid[i - 1]);
  }
  out.grid_integral = integral;
  return out;
}

std::vector<Peak> find_peaks(const Spectrum& spectrum, Component component,
                             double min_relative_height) {
  const auto& curve = spectrum.curve(component);
  const auto& grid = spectrum.grid;
  std::vector<Peak> peaks;
  if (curve.size() < 3) return peaks;

  const double top = *std::max_element(curve.begin(), curve.end());
  if (!(top > 0.0)) return peaks;
  double heaviest = 0.0;
  for (const auto& line : spectrum.lines) {
    if (line.component == component) heaviest = std::max(heaviest, line.weight);
  }
  const double reach = kPi / spectrum.detection_time;

  for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
    if (!(curve[i] > curve[i - 1] && curve[i] >= curve[i + 1])) continue;
    if (curve[i] < min_relative_height * top) continue;
    const bool backed = std::any_of(spectrum.lines.begin(), spectrum.lines.end(), [&](const auto& l) {
      return l.component == component && l.weight >= min_relative_height * heaviest &&
             std::abs(l.frequency - grid[i]) <= reach;
    });
    if (backed) peaks.push_back({grid[i], curve[i]});
  }
  return peaks;
}

double weight_within(const Spectrum& spectrum, Component component, double center,
                     double half_width) {
  double sum = 0.0;
  for (const auto& line : spectrum.lines) {
    if (line.component == component && std::abs(line.frequency - center) <= half_width) {
      sum += line.weight;
    }
  }
  return sum;
}

}  // namespace braggsim
