#pragma once

// Single-particle physics of the sinusoidal lattice V0 sin^2(pi x / d0):
// lowest Bloch band, the real Wannier function built from it, and the
// overlap integrals entering the Bose-Hubbard model and the scattering
// operator.
//
// Energies are in units of hbar*omega_R with omega_R = hbar pi^2/(2 m d0^2);
// positions inside WannierData are in units of d0.

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Core>

#include "braggsim/units.hpp"

namespace braggsim {

struct LatticeConfig {
  double depth = 8.1;                                      // V0 [hbar omega_R]
  double spacing = 413e-9;                                 // d0 [m]
  double mass = units::kRubidium87Mass;                    // [kg]
  double scattering_length = 105.0 * units::kBohrRadius;  // a_s [m]
  double transverse_frequency = 10.0;                      // omega_r [omega_R]
  int sites = 7;                                           // M
  int atoms = 7;                                           // N

  // Throws DomainError when an invariant is violated.
  void validate() const;

  double recoil_frequency() const { return units::recoil_frequency(mass, spacing); }
  // xi_r = sqrt(hbar / (m omega_r)) [m]
  double transverse_length() const;
  double filling() const { return static_cast<double>(atoms) / sites; }
};

struct BandData {
  double depth = 0.0;
  int plane_wave_cutoff = 0;
  // Quasimomenta in units of pi/d0, uniform on (-1, 1].
  std::vector<double> k_grid;
  std::vector<double> energies;
  // Plane-wave amplitudes c_n(k), n = -cutoff..cutoff, unit norm.
  std::vector<Eigen::VectorXd> bloch_coefficients;

  int k_count() const { return static_cast<int>(k_grid.size()); }
};

struct WannierData {
  // Closed uniform grid over the k_count-period supercell, centred on 0, in units of d0.
  std::vector<double> positions;
  // w(x) in units of d0^{-1/2}; integral of w^2 over x/d0 is one.
  std::vector<double> values;
  // Kinetic term -(hbar^2/2m) w''(x) in units of hbar omega_R d0^{-1/2}.
  std::vector<double> kinetic;
  int points_per_period = 0;
  BandData band;

  double step() const { return 1.0 / points_per_period; }
  int window_periods() const { return band.k_count(); }
};

struct HubbardParams {
  double J = 0.0;   // hopping [hbar omega_R]
  double U = 0.0;   // on-site interaction [hbar omega_R]
  double mu = 0.0;  // chemical potential [hbar omega_R]
  int sites = 0;
  int atoms = 0;
  // Hopping recovered from the nearest-neighbour Fourier coefficient of E(k).
  double J_dispersion = 0.0;

  double filling() const { return sites > 0 ? static_cast<double>(atoms) / sites : 0.0; }
  bool integer_filling() const { return sites > 0 && atoms % sites == 0; }
};

using MomentumVector = std::array<double, 3>;  // rad/m

struct CouplingCoefficients {
  std::complex<double> j0;
  std::complex<double> j1;
  MomentumVector q{};
};

inline constexpr int kDefaultPlaneWaveCutoff = 16;
inline constexpr int kDefaultPointsPerPeriod = 64;

// Smallest multiple of the site count that is at least 96.
int default_k_count(int sites);

// Lowest band on a uniform k grid. Convergence is checked against cutoff + 4.
BandData solve_band_structure(const LatticeConfig& config,
                              int plane_wave_cutoff = kDefaultPlaneWaveCutoff,
                              int k_count = 0);

// Kohn construction: every Bloch function real and positive at x = 0, then summed.
WannierData compute_wannier(const BandData& band, int points_per_period = kDefaultPointsPerPeriod);

HubbardParams hubbard_parameters(const WannierData& wannier, const LatticeConfig& config);

CouplingCoefficients coupling_coefficients(const WannierData& wannier,
                                           const LatticeConfig& config,
                                           const MomentumVector& q);

// Convenience for a momentum transfer along the lattice: q = (theta/d0, 0, 0).
MomentumVector axial_momentum(double bragg_angle, double spacing);

// Everything derived from one LatticeConfig.
struct LatticeSolution {
  LatticeConfig config;
  WannierData wannier;
  HubbardParams params;
};

LatticeSolution solve_lattice(const LatticeConfig& config,
                              int plane_wave_cutoff = kDefaultPlaneWaveCutoff,
                              int k_count = 0,
                              int points_per_period = kDefaultPointsPerPeriod);

// Composite Simpson rule on a uniform grid; the sample count must be odd.
double simpson(const std::vector<double>& f, double h);
std::complex<double> simpson(const std::vector<std::complex<double>>& f, double h);

}  // namespace braggsim
