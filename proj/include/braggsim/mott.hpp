#pragma once

// Analytic Mott-insulator backend: strong-coupling perturbation theory about
// the uniform-filling state |g,g,...,g>, with particle-hole excitations in the
// large-filling limit.

#include <vector>

#include <Eigen/Core>

#include "braggsim/hilbert.hpp"
#include "braggsim/probe.hpp"

namespace braggsim {

struct ParticleHoleMode {
  int r = 0;  // 1..M-1
  int s = 0;  // 0..M-1, quasimomentum 2 pi s / (M d0)
  // c_{n,m} for particle on n and hole on m, n, m = 0..M-1.
  Eigen::MatrixXcd coefficients;
  // A_{r,s} = 2 (2g+1) cos(pi r/M) cos(pi s/M): E_{r,s} = E_0 + U - J A_{r,s}.
  double energy_shift = 0.0;

  bool light_induced() const { return (r + s) % 2 == 1; }
  // Periodic extension c_{n+M,m} = c_{n,m+M} = c_{n,m}.
  std::complex<double> coefficient(int n, int m) const;
};

std::vector<ParticleHoleMode> particle_hole_modes(int sites, int filling);

inline constexpr double kMottPerturbativeLimit = 0.2;

struct MottPerturbativeState {
  double amplitude_ground = 1.0;
  double amplitude_S = 0.0;
  double J_over_U = 0.0;
  bool outside_regime = false;  // J/U above the configured guard
};

MottPerturbativeState mott_ground_state(int sites, int filling, double J, double U,
                                        double guard = kMottPerturbativeLimit);

// The first-order state in a Fock basis: amplitude_ground |g..g> + amplitude_S |S>,
// |S> = (2M)^{-1/2} sum_n (|psi_{n,n+1}> + |psi_{n,n-1}>). Not renormalized.
Eigen::VectorXd mott_state_vector(const FockBasis& basis, const MottPerturbativeState& state);

// The lattice must have integer filling; throws DomainError otherwise.
SpectralLine mott_elastic(const ProbeGeometry& geometry, const CouplingCoefficients& coefficients,
                          const HubbardParams& params, const LatticeConfig& config);

std::vector<SpectralLine> mott_stokes(const ProbeGeometry& geometry,
                                      const CouplingCoefficients& coefficients,
                                      const HubbardParams& params, const LatticeConfig& config);

}  // namespace braggsim
