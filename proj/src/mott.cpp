#include "braggsim/mott.hpp"

#include <cmath>
#include <string>

#include "braggsim/errors.hpp"

namespace braggsim {

namespace {

using units::kPi;

int integer_filling(const LatticeConfig& config) {
  if (config.atoms % config.sites != 0) {
    throw DomainError("analytic Mott backend requires integer filling N/M");
  }
  return config.atoms / config.sites;
}

double interaction_ratio(const HubbardParams& params) {
  if (!(params.U > 0.0)) throw DomainError("analytic Mott backend requires U > 0");
  return params.J / params.U;
}

}  // namespace

std::complex<double> ParticleHoleMode::coefficient(int n, int m) const {
  const auto size = static_cast<int>(coefficients.rows());
  n = ((n % size) + size) % size;
  m = ((m % size) + size) % size;
  return coefficients(n, m);
}

std::vector<ParticleHoleMode> particle_hole_modes(int sites, int filling) {
  if (sites < 3) throw DomainError("particle-hole modes need at least three sites");
  if (filling < 1) throw DomainError("particle-hole modes need filling g >= 1");
  const double alpha = kPi / sites;
  const double prefactor = std::sqrt(2.0) / sites;

  std::vector<ParticleHoleMode> modes;
  modes.reserve(static_cast<std::size_t>(sites) * (sites - 1));
  for (int r = 1; r < sites; ++r) {
    for (int s = 0; s < sites; ++s) {
      ParticleHoleMode mode;
      mode.r = r;
      mode.s = s;
      mode.energy_shift = 2.0 * (2 * filling + 1) * std::cos(alpha * r) * std::cos(alpha * s);
      mode.coefficients = Eigen::MatrixXcd::Zero(sites, sites);
      const bool odd = (r + s) % 2 == 1;
      for (int n = 0; n < sites; ++n) {
        for (int m = 0; m < sites; ++m) {
          if (n == m) continue;
          const int separation = odd ? std::abs(n - m) : n - m;
          mode.coefficients(n, m) =
              prefactor * std::sin(alpha * r * separation) * std::polar(1.0, alpha * s * (n + m));
        }
      }
      modes.push_back(std::move(mode));
    }
  }
  return modes;
}

MottPerturbativeState mott_ground_state(int sites, int filling, double J, double U, double guard) {
  if (!(U > 0.0)) throw DomainError("perturbative Mott state requires U > 0");
  MottPerturbativeState state;
  state.J_over_U = J / U;
  const double pairs = static_cast<double>(sites) * filling * (filling + 1);
  state.amplitude_S = state.J_over_U * std::sqrt(2.0 * pairs);
  state.amplitude_ground = 1.0 - state.J_over_U * state.J_over_U * pairs;
  state.outside_regime = std::abs(state.J_over_U) > guard;
  return state;
}

Eigen::VectorXd mott_state_vector(const FockBasis& basis, const MottPerturbativeState& state) {
  const int sites = basis.sites();
  if (sites < 3) throw DomainError("adjacent particle-hole state needs at least three sites");
  if (basis.atoms() % sites != 0) throw DomainError("Mott state needs integer filling");
  const int g = basis.atoms() / sites;

  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
  std::vector<int> occ(sites, g);
  v(static_cast<Eigen::Index>(*basis.index_of(occ))) = state.amplitude_ground;
  if (g == 0) return v;

  const double weight = state.amplitude_S / std::sqrt(2.0 * sites);
  for (int n = 0; n < sites; ++n) {
    for (int step : {1, -1}) {
      const int m = (n + step + sites) % sites;
      std::vector<int> excited(sites, g);
      excited[n] += 1;
      excited[m] -= 1;
      v(static_cast<Eigen::Index>(*basis.index_of(excited))) += weight;
    }
  }
  return v;
}

SpectralLine mott_elastic(const ProbeGeometry& geometry, const CouplingCoefficients& coefficients,
                          const HubbardParams& params, const LatticeConfig& config) {
  const int g = integer_filling(config);
  const double ratio = interaction_ratio(params);
  const double n = config.atoms;
  const double grating = bloch_momentum_factor(geometry.q[0], config.spacing, config.sites);
  const auto& j0 = coefficients.j0;
  const auto& j1 = coefficients.j1;
  const double bracket =
      std::norm(j0) + 4.0 * std::sqrt(g * (g + 1.0)) * ratio * std::real(std::conj(j0) * j1);

  SpectralLine line;
  line.component = Component::elastic;
  line.frequency = 0.0;
  line.weight = n * n * grating * bracket;
  line.label = "mott elastic";
  return line;
}

std::vector<SpectralLine> mott_stokes(const ProbeGeometry& geometry,
                                      const CouplingCoefficients& coefficients,
                                      const HubbardParams& params, const LatticeConfig& config) {
  const int g = integer_filling(config);
  const double ratio = interaction_ratio(params);
  const int sites = config.sites;
  if (sites < 3) throw DomainError("analytic Mott backend needs at least three sites");
  const double alpha = kPi / sites;
  const double omega_r = config.recoil_frequency();
  const double amplitude = std::sqrt(8.0 * g * (g + 1.0));

  std::vector<SpectralLine> lines;
  lines.reserve(static_cast<std::size_t>(sites) * (sites - 1));
  for (int r = 1; r < sites; ++r) {
    const double sin_r = std::sin(alpha * r);
    for (int s = 0; s < sites; ++s) {
      const bool odd = (r + s) % 2 == 1;
      const std::complex<double> b =
          odd ? amplitude * coefficients.j1
              : amplitude * 2.0 * ratio * coefficients.j0 * std::sin(alpha * s);
      const double shifted_q = geometry.q[0] - 2.0 * kPi * s / (sites * config.spacing);
      double weight = sin_r * sin_r * std::norm(b) *
                      bloch_momentum_factor(shifted_q, config.spacing, sites);
      if (s == 0 && r % 2 == 1) {
        // 1/N_r^2 from the ground-state admixture of the s = 0, r odd states.
        weight /= 1.0 + ratio * ratio * amplitude * amplitude * sin_r * sin_r;
      }
      const double shift = 2.0 * (2 * g + 1) * std::cos(alpha * r) * std::cos(alpha * s);

      SpectralLine line;
      line.component = Component::stokes;
      line.frequency = (params.U - params.J * shift) * omega_r;
      line.weight = weight;
      line.label = "mott r=" + std::to_string(r) + " s=" + std::to_string(s);
      lines.push_back(std::move(line));
    }
  }
  return lines;
}

}  // namespace braggsim
