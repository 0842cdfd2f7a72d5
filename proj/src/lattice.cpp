#include "braggsim/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "braggsim/errors.hpp"

namespace braggsim {

namespace {

using units::kPi;

constexpr double kBandTolerance = 1e-8;
constexpr double kHoppingAgreement = 0.01;

struct LowestBandState {
  double energy;
  Eigen::VectorXd coefficients;
};

// Plane-wave Hamiltonian at reduced quasimomentum kappa = k d0 / pi.
// Basis e^{i pi (kappa + 2n) x}, kinetic (kappa + 2n)^2, potential V0/2 - V0/4 (shift +-1).
LowestBandState lowest_state(double depth, double kappa, int cutoff) {
  const int size = 2 * cutoff + 1;
  Eigen::VectorXd diag(size);
  Eigen::VectorXd offdiag = Eigen::VectorXd::Constant(size - 1, -depth / 4.0);
  for (int i = 0; i < size; ++i) {
    const double nu = kappa + 2.0 * (i - cutoff);
    diag(i) = nu * nu + depth / 2.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, offdiag, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw ResolutionError("plane-wave eigensolver failed to converge");
  }
  return {solver.eigenvalues()(0), solver.eigenvectors().col(0)};
}

// (a mod n) in [0, n)
long long positive_mod(long long a, long long n) {
  const long long r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

void LatticeConfig::validate() const {
  if (!(depth >= 0.0)) throw DomainError("lattice depth V0 must be non-negative");
  if (!(spacing > 0.0)) throw DomainError("lattice constant d0 must be positive");
  if (!(mass > 0.0)) throw DomainError("atomic mass must be positive");
  if (!std::isfinite(scattering_length)) throw DomainError("scattering length must be finite");
  if (!(transverse_frequency > 0.0)) throw DomainError("transverse frequency must be positive");
  if (sites < 2) throw DomainError("need at least two lattice sites");
  if (atoms < 1) throw DomainError("need at least one atom");
}

double LatticeConfig::transverse_length() const {
  return std::sqrt(units::kHbar / (mass * transverse_frequency * recoil_frequency()));
}

int default_k_count(int sites) {
  constexpr int kMinimum = 96;
  return sites * ((kMinimum + sites - 1) / sites);
}

BandData solve_band_structure(const LatticeConfig& config, int plane_wave_cutoff, int k_count) {
  config.validate();
  if (k_count == 0) k_count = default_k_count(config.sites);
  if (plane_wave_cutoff < 8) throw DomainError("plane-wave cutoff must be at least 8");
  if (k_count < config.sites || k_count % config.sites != 0) {
    throw DomainError("k_count must be a positive multiple of the site count");
  }

  BandData band;
  band.depth = config.depth;
  band.plane_wave_cutoff = plane_wave_cutoff;
  band.k_grid.reserve(k_count);
  band.energies.reserve(k_count);
  band.bloch_coefficients.reserve(k_count);

  for (int i = 0; i < k_count; ++i) {
    const double kappa = -1.0 + 2.0 * (i + 1) / k_count;
    auto state = lowest_state(config.depth, kappa, plane_wave_cutoff);
    const double reference = lowest_state(config.depth, kappa, plane_wave_cutoff + 4).energy;
    if (std::abs(state.energy - reference) > kBandTolerance) {
      throw ResolutionError("lowest band not converged at plane-wave cutoff " +
                            std::to_string(plane_wave_cutoff));
    }
    band.k_grid.push_back(kappa);
    band.energies.push_back(state.energy);
    band.bloch_coefficients.push_back(std::move(state.coefficients));
  }
  return band;
}

WannierData compute_wannier(const BandData& band, int points_per_period) {
  const int k_count = band.k_count();
  const int cutoff = band.plane_wave_cutoff;
  if (k_count == 0) throw DomainError("empty band data");
  if (points_per_period < 8 || points_per_period % 2 != 0) {
    throw DomainError("points per period must be even and at least 8");
  }

  // x_m = -K/2 + m/P, m = 0..K*P. Each plane wave e^{i pi nu x} with nu = p/K
  // evaluates to e^{-i pi p/2} e^{2 pi i p m / (2 K P)}, so one table of
  // roots of unity serves every (k, n) pair.
  const long long intervals = static_cast<long long>(k_count) * points_per_period;
  const long long period = 2 * intervals;
  std::vector<double> cos_table(period);
  std::vector<double> sin_table(period);
  for (long long t = 0; t < period; ++t) {
    const double angle = 2.0 * kPi * static_cast<double>(t) / static_cast<double>(period);
    cos_table[t] = std::cos(angle);
    sin_table[t] = std::sin(angle);
  }

  const std::size_t samples = static_cast<std::size_t>(intervals) + 1;
  std::vector<double> re(samples, 0.0), im(samples, 0.0);
  std::vector<double> kin_re(samples, 0.0);
  // K^{-1/2} from the Wannier sum times K^{-1/2} for Bloch functions normalized on the supercell.
  const double norm = 1.0 / static_cast<double>(k_count);

  for (int i = 0; i < k_count; ++i) {
    const auto& c = band.bloch_coefficients[i];
    const double at_origin = c.sum();
    if (std::abs(at_origin) < 1e-10) {
      throw GaugeError("Bloch function vanishes at the origin; cannot fix a real gauge");
    }
    const double gauge = at_origin > 0 ? norm : -norm;
    for (int n = -cutoff; n <= cutoff; ++n) {
      const double amplitude = gauge * c(n + cutoff);
      if (amplitude == 0.0) continue;
      const long long p = (2LL * (i + 1) - k_count) + 2LL * n * k_count;
      const double nu = static_cast<double>(p) / k_count;
      // e^{-i pi p / 2}
      double a_re = 0.0, a_im = 0.0;
      switch (positive_mod(p, 4)) {
        case 0: a_re = amplitude; break;
        case 1: a_im = -amplitude; break;
        case 2: a_re = -amplitude; break;
        default: a_im = amplitude; break;
      }
      const long long stride = positive_mod(p, period);
      long long t = 0;
      for (std::size_t m = 0; m < samples; ++m) {
        const double cr = cos_table[t], si = sin_table[t];
        const double value_re = a_re * cr - a_im * si;
        re[m] += value_re;
        im[m] += a_re * si + a_im * cr;
        kin_re[m] += nu * nu * value_re;
        t += stride;
        if (t >= period) t -= period;
      }
    }
  }

  double peak = 0.0, imaginary = 0.0;
  for (std::size_t m = 0; m < samples; ++m) {
    peak = std::max(peak, std::abs(re[m]));
    imaginary = std::max(imaginary, std::abs(im[m]));
  }
  if (imaginary > 1e-8 * peak) {
    throw GaugeError("Wannier function has an imaginary part; Bloch gauge inconsistent");
  }

  WannierData out;
  out.points_per_period = points_per_period;
  out.band = band;
  out.positions.resize(samples);
  for (std::size_t m = 0; m < samples; ++m) {
    out.positions[m] = -0.5 * k_count + static_cast<double>(m) / points_per_period;
  }
  out.values = std::move(re);
  out.kinetic = std::move(kin_re);
  return out;
}

HubbardParams hubbard_parameters(const WannierData& wannier, const LatticeConfig& config) {
  config.validate();
  const auto& band = wannier.band;
  const int k_count = band.k_count();
  const std::size_t samples = wannier.values.size();
  const std::size_t intervals = samples - 1;
  const std::size_t shift = static_cast<std::size_t>(wannier.points_per_period);
  const double h = wannier.step();

  double j_dispersion = 0.0;
  for (int i = 0; i < k_count; ++i) {
    j_dispersion -= band.energies[i] * std::cos(kPi * band.k_grid[i]);
  }
  j_dispersion /= k_count;

  // -<w_0| H |w_1> with w_1(x) = w(x - d0); the supercell makes the shift periodic.
  std::vector<double> overlap(samples), quartic(samples);
  for (std::size_t m = 0; m < samples; ++m) {
    const std::size_t neighbour = (m % intervals + intervals - shift) % intervals;
    const double s = std::sin(kPi * wannier.positions[m]);
    const double h_w1 = wannier.kinetic[neighbour] + band.depth * s * s * wannier.values[neighbour];
    overlap[m] = wannier.values[m] * h_w1;
    const double w2 = wannier.values[m] * wannier.values[m];
    quartic[m] = w2 * w2;
  }
  const double j_real = -simpson(overlap, h);

  if (std::abs(j_real - j_dispersion) > kHoppingAgreement * std::abs(j_dispersion) &&
      std::abs(j_dispersion) > 1e-12) {
    throw ResolutionError("real-space and dispersion hopping disagree beyond 1%");
  }

  // Transverse ground state overlap: integral |phi_0|^4 d^2 rho = m omega_r / (2 pi hbar),
  // so with u_gg = 4 pi hbar^2 a_s / m the on-site energy is 2 hbar omega_r a_s int w^4.
  const double w4 = simpson(quartic, h);
  const double interaction =
      2.0 * config.transverse_frequency * (config.scattering_length / config.spacing) * w4;

  HubbardParams params;
  params.J = j_real;
  params.U = interaction;
  params.sites = config.sites;
  params.atoms = config.atoms;
  params.mu = -2.0 * params.J + params.U * params.filling();
  params.J_dispersion = j_dispersion;
  return params;
}

CouplingCoefficients coupling_coefficients(const WannierData& wannier,
                                           const LatticeConfig& config,
                                           const MomentumVector& q) {
  const double theta = q[0] * config.spacing;
  const double h = wannier.step();
  if (std::abs(theta) * h > kPi / 2.0) {
    throw ResolutionError("momentum transfer beyond the resolvable Wannier grid");
  }
  const double xi = config.transverse_length();
  const double transverse = std::exp(-0.25 * (q[1] * q[1] + q[2] * q[2]) * xi * xi);

  const std::size_t samples = wannier.values.size();
  const std::size_t intervals = samples - 1;
  const std::size_t shift = static_cast<std::size_t>(wannier.points_per_period);
  std::vector<std::complex<double>> density(samples), bond(samples);
  for (std::size_t m = 0; m < samples; ++m) {
    const std::size_t neighbour = (m % intervals + intervals - shift) % intervals;
    const auto phase = std::polar(1.0, theta * wannier.positions[m]);
    density[m] = phase * (wannier.values[m] * wannier.values[m]);
    bond[m] = phase * (wannier.values[m] * wannier.values[neighbour]);
  }

  CouplingCoefficients out;
  out.q = q;
  out.j0 = transverse * simpson(density, h);
  out.j1 = transverse * simpson(bond, h);
  return out;
}

MomentumVector axial_momentum(double bragg_angle, double spacing) {
  return {bragg_angle / spacing, 0.0, 0.0};
}

LatticeSolution solve_lattice(const LatticeConfig& config, int plane_wave_cutoff, int k_count,
                              int points_per_period) {
  LatticeSolution solution;
  solution.config = config;
  auto band = solve_band_structure(config, plane_wave_cutoff, k_count);
  solution.wannier = compute_wannier(band, points_per_period);
  solution.params = hubbard_parameters(solution.wannier, config);
  return solution;
}

namespace {

template <typename T>
T simpson_impl(const std::vector<T>& f, double h) {
  if (f.size() < 3 || f.size() % 2 == 0) {
    throw DomainError("Simpson rule needs an odd number of samples (at least 3)");
  }
  T odd{}, even{};
  for (std::size_t i = 1; i + 1 < f.size(); i += 2) odd += f[i];
  for (std::size_t i = 2; i + 1 < f.size(); i += 2) even += f[i];
  return (f.front() + f.back() + 4.0 * odd + 2.0 * even) * (h / 3.0);
}

}  // namespace

double simpson(const std::vector<double>& f, double h) { return simpson_impl(f, h); }

std::complex<double> simpson(const std::vector<std::complex<double>>& f, double h) {
  return simpson_impl(f, h);
}

}  // namespace braggsim
