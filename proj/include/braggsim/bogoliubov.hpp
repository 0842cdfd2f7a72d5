#pragma once

// Weakly interacting superfluid: Bogoliubov quasiparticles of the ring and
// the zero- and one-phonon scattering cross sections.

#include <optional>
#include <string>
#include <vector>

#include "braggsim/probe.hpp"

namespace braggsim {

struct BogoliubovMode {
  int index = 0;              // n in p = 2 pi n / (M d0)
  double momentum = 0.0;      // p [rad/m]
  double free_energy = 0.0;   // epsilon_p = 4 J sin^2(p d0/2) [hbar omega_R]
  double energy = 0.0;        // hbar Omega_p [hbar omega_R]
  double u = 0.0;
  double v = 0.0;

  double phase(double spacing) const { return momentum * spacing; }  // p d0
};

inline constexpr double kSuperfluidRegimeLimit = 3.0;

// M - 1 modes, n in {-ceil(M/2)+1, ..., floor(M/2)} without 0.
std::vector<BogoliubovMode> bogoliubov_modes(const HubbardParams& params,
                                             const LatticeConfig& config);

// Message when U/J exceeds the guard; the formulas are still evaluated.
std::optional<std::string> superfluid_regime_warning(const HubbardParams& params,
                                                     double limit = kSuperfluidRegimeLimit);

SpectralLine sf_elastic(const ProbeGeometry& geometry, const CouplingCoefficients& coefficients,
                        const HubbardParams& params, const std::vector<BogoliubovMode>& modes,
                        const LatticeConfig& config);

std::vector<SpectralLine> sf_stokes(const ProbeGeometry& geometry,
                                    const CouplingCoefficients& coefficients,
                                    const HubbardParams& params,
                                    const std::vector<BogoliubovMode>& modes,
                                    const LatticeConfig& config);

}  // namespace braggsim
