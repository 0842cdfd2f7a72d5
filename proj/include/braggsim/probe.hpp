#pragma once

#include <string>

#include "braggsim/lattice.hpp"

namespace braggsim {

struct ProbeGeometry {
  MomentumVector q{};            // k_L - k_emitted [rad/m]
  double drive_frequency = 0.0;  // omega_L [rad/s]; only enters the angular prefactor
  double detection_time = 3e-3;  // T [s]

  static ProbeGeometry from_bragg_angle(double bragg_angle, double spacing,
                                        double detection_time = 3e-3) {
    ProbeGeometry g;
    g.q = axial_momentum(bragg_angle, spacing);
    g.detection_time = detection_time;
    return g;
  }

  double bragg_angle(double spacing) const { return q[0] * spacing; }
  void validate() const;
};

enum class Component { elastic, stokes };

inline const char* to_string(Component c) { return c == Component::elastic ? "elastic" : "stokes"; }

struct SpectralLine {
  Component component = Component::stokes;
  double frequency = 0.0;  // shift omega_L - omega [rad/s]
  double weight = 0.0;     // units of A(Omega)
  std::string label;
};

// Finite-lattice grating factor sin^2(M d0 q/2) / (M^2 sin^2(d0 q/2)); equals 1 at q d0 = 2 pi n.
double bloch_momentum_factor(double qx, double spacing, int sites);

}  // namespace braggsim
