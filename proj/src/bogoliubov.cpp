#include "braggsim/bogoliubov.hpp"

#include <cmath>
#include <cstdio>

#include "braggsim/errors.hpp"

namespace braggsim {

using units::kPi;

std::vector<BogoliubovMode> bogoliubov_modes(const HubbardParams& params,
                                             const LatticeConfig& config) {
  if (!(params.J > 0.0)) throw DomainError("Bogoliubov modes require J > 0");
  if (params.U < 0.0) throw DomainError("Bogoliubov modes require U >= 0");
  const int sites = config.sites;
  const double ug = params.U * config.filling();

  std::vector<BogoliubovMode> modes;
  for (int n = -((sites + 1) / 2) + 1; n <= sites / 2; ++n) {
    if (n == 0) continue;
    BogoliubovMode mode;
    mode.index = n;
    mode.momentum = 2.0 * kPi * n / (sites * config.spacing);
    const double half = std::sin(kPi * n / sites);
    mode.free_energy = 4.0 * params.J * half * half;
    const double eps = mode.free_energy;
    mode.energy = std::sqrt(eps * eps + 2.0 * ug * eps);
    if (!(mode.energy > 0.0)) throw DomainError("vanishing Bogoliubov frequency");
    // v from u v = Ug / (2 hbar Omega) avoids the cancellation in eps + Ug - hbar Omega.
    mode.u = std::sqrt((eps + ug + mode.energy) / (2.0 * mode.energy));
    mode.v = ug / (2.0 * mode.energy * mode.u);
    modes.push_back(mode);
  }
  return modes;
}

std::optional<std::string> superfluid_regime_warning(const HubbardParams& params, double limit) {
  if (params.J > 0.0 && params.U / params.J <= limit) return std::nullopt;
  char buf[128];
  std::snprintf(buf, sizeof buf, "Bogoliubov backend outside its regime: U/J = %.4g exceeds %.4g",
                params.U / params.J, limit);
  return std::string(buf);
}

SpectralLine sf_elastic(const ProbeGeometry& geometry, const CouplingCoefficients& coefficients,
                        const HubbardParams& /*params*/, const std::vector<BogoliubovMode>& modes,
                        const LatticeConfig& config) {
  const double n = config.atoms;
  const auto condensate = coefficients.j0 + 2.0 * coefficients.j1;
  double depletion = 0.0;
  for (const auto& mode : modes) {
    const auto fluctuation =
        coefficients.j0 + 2.0 * coefficients.j1 * std::cos(mode.phase(config.spacing));
    depletion += mode.v * mode.v * std::real(std::conj(condensate) * fluctuation);
  }
  const double grating = bloch_momentum_factor(geometry.q[0], config.spacing, config.sites);

  SpectralLine line;
  line.component = Component::elastic;
  line.frequency = 0.0;
  line.weight = n * n * grating * (std::norm(condensate) + 2.0 / n * depletion);
  line.label = "bogoliubov elastic";
  return line;
}

std::vector<SpectralLine> sf_stokes(const ProbeGeometry& geometry,
                                    const CouplingCoefficients& coefficients,
                                    const HubbardParams& /*params*/,
                                    const std::vector<BogoliubovMode>& modes,
                                    const LatticeConfig& config) {
  const double n = config.atoms;
  const double omega_r = config.recoil_frequency();
  std::vector<SpectralLine> lines;
  lines.reserve(modes.size());
  for (const auto& mode : modes) {
    const double pd = mode.phase(config.spacing);
    const auto amplitude =
        coefficients.j0 + coefficients.j1 * (1.0 + std::polar(1.0, -pd));
    const double structure = mode.free_energy / mode.energy;
    const double grating =
        bloch_momentum_factor(geometry.q[0] - mode.momentum, config.spacing, config.sites);

    SpectralLine line;
    line.component = Component::stokes;
    line.frequency = mode.energy * omega_r;
    line.weight = n * structure * std::norm(amplitude) * grating;
    line.label = "bogoliubov n=" + std::to_string(mode.index);
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace braggsim
