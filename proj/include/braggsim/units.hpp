#pragma once

#include <numbers>

namespace braggsim::units {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHbar = 1.054571817e-34;           // J s
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg
inline constexpr double kBohrRadius = 5.29177210903e-11;    // m
inline constexpr double kSpeedOfLight = 299792458.0;        // m/s

inline constexpr double kRubidium87Mass = 86.909180527 * kAtomicMassUnit;

// Recoil frequency omega_R = hbar pi^2 / (2 m d0^2) of a lattice with spacing d0.
inline constexpr double recoil_frequency(double mass, double spacing) {
  return kHbar * kPi * kPi / (2.0 * mass * spacing * spacing);
}

}  // namespace braggsim::units
