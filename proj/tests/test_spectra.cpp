#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "braggsim/errors.hpp"
#include "braggsim/mott.hpp"
#include "braggsim/spectra.hpp"
#include "braggsim/sweep.hpp"
#include "oracles.hpp"

using namespace braggsim;
using units::kPi;
using Complex = std::complex<double>;

namespace {

constexpr double kT = 3e-3;

HubbardParams hubbard(int sites, int atoms, double J, double U) {
  HubbardParams p;
  p.J = J;
  p.U = U;
  p.sites = sites;
  p.atoms = atoms;
  return p;
}

CouplingCoefficients coupling(Complex j0, Complex j1, double theta) {
  CouplingCoefficients c;
  c.j0 = j0;
  c.j1 = j1;
  c.q = {theta, 0.0, 0.0};
  return c;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return s;
}

// Two equal Stokes lines `separation` apart, broadened on a fine grid.
std::size_t resolved_peaks(Lineshape shape, double separation) {
  const double centre = 2.0e3;
  std::vector<SpectralLine> lines(2);
  lines[0].frequency = centre - separation / 2;
  lines[1].frequency = centre + separation / 2;
  lines[0].weight = lines[1].weight = 1.0;
  ProbeGeometry geom;
  geom.detection_time = kT;
  FrequencyGrid grid{centre - 20.0 / kT, centre + 20.0 / kT, 8001};
  const auto spec = assemble_spectrum("test", lines, geom, 1.0, grid, shape);
  return find_peaks(spec, Component::stokes, 0.05).size();
}

}  // namespace

TEST_CASE("diffraction and sinc-squared kernels") {
  CHECK(diffraction_kernel(0.0, kT) == doctest::Approx(kT / (2.0 * kPi)));
  CHECK(sinc_squared_kernel(0.0, kT) == doctest::Approx(kT / (2.0 * kPi)));
  CHECK(std::abs(diffraction_kernel(2.0 * kPi / kT, kT)) < 1e-12);
  CHECK(sinc_squared_kernel(2.0 * kPi / kT, kT) < 1e-12);
  CHECK(diffraction_kernel(3.0 * kPi / kT, kT) < 0.0);  // first side lobe
  CHECK(diffraction_kernel(-1.7e3, kT) == diffraction_kernel(1.7e3, kT));
  // Continuous across zero.
  CHECK(diffraction_kernel(1e-9, kT) == doctest::Approx(kT / (2.0 * kPi)).epsilon(1e-12));

  const double reach = 200.0 / kT;
  const int n = 400001;
  std::vector<double> x(n), d(n), s(n);
  for (int i = 0; i < n; ++i) {
    x[i] = -reach + 2.0 * reach * i / (n - 1);
    d[i] = diffraction_kernel(x[i], kT);
    s[i] = sinc_squared_kernel(x[i], kT);
  }
  CHECK(trapezoid(x, d) == doctest::Approx(1.0).epsilon(0.01));
  CHECK(trapezoid(x, s) == doctest::Approx(1.0).epsilon(0.01));
  CHECK(lineshape_value(Lineshape::sinc_squared, 10.0, kT) == sinc_squared_kernel(10.0, kT));
}

TEST_CASE("grating factor") {
  CHECK(bloch_momentum_factor(0.0, 1.0, 7) == 1.0);
  CHECK(bloch_momentum_factor(2.0 * kPi, 1.0, 7) == doctest::Approx(1.0));
  CHECK(bloch_momentum_factor(kPi, 1.0, 7) == doctest::Approx(1.0 / 49.0));
  CHECK(std::abs(bloch_momentum_factor(2.0 * kPi / 7.0, 1.0, 7)) < 1e-28);
  for (double q : {0.3, 1.1, 2.9}) {
    const double expected =
        std::pow(std::sin(7.0 * q / 2), 2) / (49.0 * std::pow(std::sin(q / 2), 2));
    CHECK(bloch_momentum_factor(q, 1.0, 7) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("angular prefactor") {
  AngularPrefactor p;
  p.linewidth = 2.0 * kPi * 6.07e6;
  p.detuning = 2.0 * kPi * 1e9;
  p.rabi_frequency = 2.0 * kPi * 1e7;
  p.dipole_projection = 0.0;
  const double expected = (p.linewidth / units::kSpeedOfLight) *
                          std::pow(p.rabi_frequency / p.detuning, 2) * 3.0 / (8.0 * kPi);
  CHECK(angular_prefactor(p) == doctest::Approx(expected).epsilon(1e-14));
  p.dipole_projection = 1.0;
  CHECK(angular_prefactor(p) == 0.0);
  p.dipole_projection = 1.5;
  CHECK_THROWS_AS(angular_prefactor(p), DomainError);
  p.dipole_projection = 0.5;
  p.detuning = 0.0;
  CHECK_THROWS_AS(angular_prefactor(p), ResonanceError);
}

TEST_CASE("two lines are resolved at the kernel resolution") {
  const double period = 2.0 * kPi / kT;
  CHECK(resolved_peaks(Lineshape::diffraction, 1.35 * period) == 2);
  CHECK(resolved_peaks(Lineshape::diffraction, 0.5 * period) == 1);
  CHECK(resolved_peaks(Lineshape::sinc_squared, 1.0 * period) == 2);
  CHECK(resolved_peaks(Lineshape::sinc_squared, 0.5 * period) == 1);
}

TEST_CASE("exact lines obey the sum rule against brute-force matrices") {
  const int m = 4;
  const int n = 4;
  const double J = 0.05;
  const double U = 0.4;
  const double theta = 2.0 * kPi / 4.0 + 0.2;
  const Complex j0(0.8, 0.15);
  const Complex j1(0.02, 0.01);

  const FockBasis basis(m, n);
  const auto h = build_hamiltonian(basis, hubbard(m, n, J, U));
  const auto t = build_probe_operator(basis, coupling(j0, j1, theta), 1.0, true);
  ProbeGeometry geom;
  geom.q = {theta, 0.0, 0.0};
  const double omega_r = 2.0e4;
  const auto spec = exact_lines(h, t, geom, omega_r);

  // Oracle: ground state of the brute-force matrix, <0|T^+T|0> and |<0|T|0>|^2.
  // Both quantities are basis-independent, so no state mapping is needed.
  const auto oh = oracle::brute_force_hamiltonian(m, n, J, U, 0.0);
  const auto ot = oracle::brute_force_probe(m, n, j0, j1, theta);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(oh);
  const Eigen::VectorXcd g0 = solver.eigenvectors().col(0).cast<Complex>();
  const Eigen::VectorXcd tg = ot * g0;
  const double total = tg.squaredNorm();
  const double elastic = std::norm(g0.dot(tg));

  CHECK(spec.elastic_weight() == doctest::Approx(elastic).epsilon(1e-10));
  CHECK(spec.elastic_weight() + spec.stokes_weight() == doctest::Approx(total).epsilon(1e-10));
  for (const auto& line : spec.lines) {
    CHECK(line.weight >= 0.0);
    if (line.component == Component::stokes) CHECK(line.frequency > 0.0);
  }
  const double gap = (solver.eigenvalues()(1) - solver.eigenvalues()(0)) * omega_r;
  double lowest = 1e300;
  for (const auto& line : spec.lines) {
    if (line.component == Component::stokes) lowest = std::min(lowest, line.frequency);
  }
  CHECK(lowest == doctest::Approx(gap).epsilon(1e-9));
}

TEST_CASE("exact and Mott backends agree deep in the Mott regime") {
  // Three sites at unit filling without light-induced hopping: every Stokes
  // line comes from the first-order admixture, so the totals match to O(J/U).
  const int m = 3;
  const double J = 0.002;
  const double U = 0.2;
  LatticeConfig config;
  config.sites = m;
  config.atoms = m;
  const auto params = hubbard(m, m, J, U);
  const FockBasis basis(m, m);
  const auto h = build_hamiltonian(basis, params);
  for (int s = 1; s < m; ++s) {
    const auto geom = ProbeGeometry::from_bragg_angle(2.0 * kPi * s / m, config.spacing);
    CouplingCoefficients c;
    c.j0 = 0.9;
    c.j1 = 0.0;
    c.q = geom.q;
    const auto t = build_probe_operator(basis, c, config.spacing, false);
    const auto exact = exact_lines(h, t, geom, config.recoil_frequency());
    double mott = 0.0;
    for (const auto& l : mott_stokes(geom, c, params, config)) mott += l.weight;
    CHECK(exact.stokes_weight() == doctest::Approx(mott).epsilon(0.3));
    CHECK(exact.elastic_weight() ==
          doctest::Approx(mott_elastic(geom, c, params, config).weight).epsilon(0.3).scale(1e-6));
  }
}

TEST_CASE("broadened curves conserve weight and detect narrow grids") {
  LatticeConfig config;
  config.sites = 5;
  config.atoms = 5;
  const auto params = hubbard(5, 5, 0.03, 0.5);
  const FockBasis basis(5, 5);
  const auto h = build_hamiltonian(basis, params);
  const auto geom = ProbeGeometry::from_bragg_angle(2.0 * kPi / 5.0 + 0.1, config.spacing, kT);
  const auto t = build_probe_operator(basis, coupling(0.9, 0.02, geom.q[0]), config.spacing, true);
  const double omega_r = config.recoil_frequency();

  const auto covered = exact_stokes_spectrum(h, t, geom, omega_r);
  const auto integrals = integrated_intensity(covered);
  CHECK(integrals.line_sum == doctest::Approx(integrals.elastic + integrals.stokes));
  CHECK(integrals.grid_integral == doctest::Approx(integrals.line_sum).epsilon(0.01));
  CHECK(covered.grid.front() <= -kCoverageMargin / kT);

  // The default grid starts at zero, cutting the elastic line in half.
  const auto narrow = exact_stokes_spectrum(h, t, geom, omega_r, FrequencyGrid{0.0, 1e4, 2000});
  CHECK_THROWS_AS(integrated_intensity(narrow), CoverageError);
  CHECK_THROWS_AS(integrated_intensity(exact_lines(h, t, geom, omega_r)), CoverageError);

  CHECK_THROWS_AS((FrequencyGrid{1.0, 0.0, 10}.points()), DomainError);
  CHECK_THROWS_AS((FrequencyGrid{0.0, 1.0, 1}.points()), DomainError);
  const auto pts = FrequencyGrid{0.0, 1.0, 5}.points();
  CHECK(pts == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
}

TEST_CASE("default and covering grids") {
  const auto params = hubbard(7, 7, 0.03, 0.5);
  const auto grid = default_frequency_grid(params, 1e5);
  CHECK(grid.min == 0.0);
  CHECK(grid.max == doctest::Approx((0.5 + 0.09 * 3) * 1e5));
  CHECK(grid.count == 2000);

  std::vector<SpectralLine> lines(2);
  lines[0].component = Component::elastic;
  lines[0].weight = 1.0;
  lines[1].frequency = 2e5;
  lines[1].weight = 1e-9;  // negligible: does not widen the grid
  const auto wide = covering_grid(grid, lines, kT);
  CHECK(wide.min == doctest::Approx(-kCoverageMargin / kT));
  CHECK(wide.max == grid.max);
  const double base_step = (grid.max - grid.min) / (grid.count - 1);
  CHECK((wide.max - wide.min) / (wide.count - 1) <= base_step + 1e-12);
}

TEST_CASE("peaks ignore kernel side lobes") {
  std::vector<SpectralLine> lines(1);
  lines[0].frequency = 3000.0;
  lines[0].weight = 1.0;
  ProbeGeometry geom;
  geom.detection_time = kT;
  const auto spec =
      assemble_spectrum("test", lines, geom, 1.0, FrequencyGrid{0.0, 6000.0, 6001});
  const auto peaks = find_peaks(spec, Component::stokes);
  REQUIRE(peaks.size() == 1);
  CHECK(peaks[0].frequency == doctest::Approx(3000.0).epsilon(1e-3));
  CHECK(weight_within(spec, Component::stokes, 3000.0, 1.0) == 1.0);
  CHECK(weight_within(spec, Component::elastic, 3000.0, 1.0) == 0.0);
}

TEST_CASE("sweep reproduces direct evaluation in cell order") {
  SweepSettings settings;
  settings.lattice.sites = 4;
  settings.lattice.atoms = 4;
  settings.threads = 2;
  const std::vector<SweepCell> cells = {
      {8.1, 2.0 * kPi / 7.0, Backend::exact, true},
      {0.1, 2.0 * kPi / 7.0, Backend::bogoliubov, true},
      {8.1, 6.0 * kPi / 7.0, Backend::mott_analytic, false},
  };
  const auto results = sweep(cells, settings);
  REQUIRE(results.size() == cells.size());

  for (std::size_t i = 0; i < cells.size(); ++i) {
    CAPTURE(i);
    LatticeConfig config = settings.lattice;
    config.depth = cells[i].depth;
    const auto lattice = solve_lattice(config);
    const FockBasis basis(config.sites, config.atoms);
    auto params = lattice.params;
    params.mu = 0.0;
    const auto h = build_hamiltonian(basis, params);
    const auto direct = evaluate_cell(cells[i], lattice, &basis, &h, settings);
    CHECK(results[i].cell.depth == cells[i].depth);
    CHECK(results[i].cell.backend == cells[i].backend);
    CHECK(results[i].spectrum.backend == direct.spectrum.backend);
    REQUIRE(results[i].spectrum.lines.size() == direct.spectrum.lines.size());
    for (std::size_t k = 0; k < direct.spectrum.lines.size(); ++k) {
      CHECK(results[i].spectrum.lines[k].weight == direct.spectrum.lines[k].weight);
      CHECK(results[i].spectrum.lines[k].frequency == direct.spectrum.lines[k].frequency);
    }
    CHECK(results[i].spectrum.stokes_curve == direct.spectrum.stokes_curve);
  }
  CHECK(results[2].coefficients.j1 == Complex(0.0));
  CHECK(results[2].spectrum.warnings.empty());
  CHECK(results[1].spectrum.warnings.empty());
}

TEST_CASE("backend names") {
  for (auto b : {Backend::exact, Backend::mott_analytic, Backend::bogoliubov}) {
    CHECK(parse_backend(to_string(b)) == b);
  }
  CHECK(parse_backend("mott") == Backend::mott_analytic);
  CHECK_FALSE(parse_backend("dmrg").has_value());
}
