#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "braggsim/bogoliubov.hpp"
#include "braggsim/errors.hpp"

using namespace braggsim;
using units::kPi;
using Complex = std::complex<double>;

namespace {

LatticeConfig ring(int sites, int atoms) {
  LatticeConfig c;
  c.sites = sites;
  c.atoms = atoms;
  return c;
}

HubbardParams hubbard(const LatticeConfig& c, double J, double U) {
  HubbardParams p;
  p.J = J;
  p.U = U;
  p.sites = c.sites;
  p.atoms = c.atoms;
  return p;
}

CouplingCoefficients couplings(Complex j0, Complex j1, const ProbeGeometry& g) {
  CouplingCoefficients c;
  c.j0 = j0;
  c.j1 = j1;
  c.q = g.q;
  return c;
}

}  // namespace

TEST_CASE("Bogoliubov modes: momenta and the free limit") {
  const auto config = ring(7, 7);
  const auto modes = bogoliubov_modes(hubbard(config, 0.03, 0.0), config);
  REQUIRE(modes.size() == 6);
  std::vector<int> indices;
  for (const auto& m : modes) indices.push_back(m.index);
  CHECK(indices == std::vector<int>{-3, -2, -1, 1, 2, 3});
  for (const auto& m : modes) {
    const double eps = 4.0 * 0.03 * std::pow(std::sin(kPi * m.index / 7.0), 2);
    CHECK(m.free_energy == doctest::Approx(eps).epsilon(1e-14));
    CHECK(m.energy == doctest::Approx(eps).epsilon(1e-14));
    CHECK(m.u == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m.v == 0.0);
    CHECK(m.phase(config.spacing) == doctest::Approx(2.0 * kPi * m.index / 7.0));
  }
  const auto even = bogoliubov_modes(hubbard(ring(6, 6), 1.0, 1.0), ring(6, 6));
  CHECK(even.size() == 5);
  CHECK(even.front().index == -2);
  CHECK(even.back().index == 3);
}

TEST_CASE("Bogoliubov identities hold to machine precision") {
  for (double ratio : {0.1, 1.0, 3.0}) {
    for (int g : {1, 2}) {
      CAPTURE(ratio);
      CAPTURE(g);
      const auto config = ring(7, 7 * g);
      const double J = 0.03;
      const double U = ratio * J;
      for (const auto& m : bogoliubov_modes(hubbard(config, J, U), config)) {
        CHECK(std::abs(m.u * m.u - m.v * m.v - 1.0) < 1e-12);
        CHECK(std::abs(m.u * m.v - U * g / (2.0 * m.energy)) < 1e-12 * m.u * m.v + 1e-15);
        const double eps = m.free_energy;
        CHECK(std::abs(m.energy * m.energy - eps * eps - 2.0 * U * g * eps) <
              1e-12 * m.energy * m.energy);
      }
    }
  }
}

TEST_CASE("Bogoliubov modes match a 2x2 Bogoliubov-de Gennes diagonalization") {
  const auto config = ring(9, 18);
  const double J = 1.0;
  const double U = 0.7;
  const double ug = U * 2.0;
  for (const auto& m : bogoliubov_modes(hubbard(config, J, U), config)) {
    const double eps = m.free_energy;
    Eigen::Matrix2d bdg;
    bdg << eps + ug, ug, -ug, -(eps + ug);
    Eigen::EigenSolver<Eigen::Matrix2d> solver(bdg);
    const auto values = solver.eigenvalues().real();
    const int plus = values(0) > values(1) ? 0 : 1;
    CHECK(values(plus) == doctest::Approx(m.energy).epsilon(1e-12));
    Eigen::Vector2d vec = solver.eigenvectors().col(plus).real();
    vec /= std::sqrt(vec(0) * vec(0) - vec(1) * vec(1));
    CHECK(std::abs(vec(0)) == doctest::Approx(m.u).epsilon(1e-10));
    CHECK(std::abs(vec(1)) == doctest::Approx(m.v).epsilon(1e-10));
  }
}

TEST_CASE("Bogoliubov dispersion: phonon limit, monotone, bounded structure factor") {
  const auto big = ring(2000, 2000);
  const auto modes = bogoliubov_modes(hubbard(big, 1.0, 1.0), big);
  const auto first = std::find_if(modes.begin(), modes.end(), [](const auto& m) { return m.index == 1; });
  REQUIRE(first != modes.end());
  const double sound = std::sqrt(2.0 * first->free_energy);
  CHECK(first->energy / sound == doctest::Approx(1.0).epsilon(1e-4));

  const auto config = ring(64, 64);
  for (double ratio : {0.1, 1.0, 3.0}) {
    const auto fine = bogoliubov_modes(hubbard(config, 1.0, ratio), config);
    std::vector<std::pair<int, double>> positive;
    for (const auto& m : fine) {
      if (m.index > 0) positive.emplace_back(m.index, m.energy);
      const double s = m.free_energy / m.energy;
      CHECK(s > 0.0);
      CHECK(s <= 1.0);
    }
    std::sort(positive.begin(), positive.end());
    for (std::size_t i = 1; i < positive.size(); ++i) {
      CHECK(positive[i].second > positive[i - 1].second);
    }
  }
}

TEST_CASE("quantum depletion is small in the weakly interacting regime") {
  for (double ratio : {0.1, 0.5, 1.0}) {
    const auto config = ring(7, 7);
    double depletion = 0.0;
    for (const auto& m : bogoliubov_modes(hubbard(config, 1.0, ratio), config)) depletion += m.v * m.v;
    CHECK(depletion / config.atoms < 0.1);
  }
}

TEST_CASE("superfluid elastic line") {
  const auto config = ring(7, 7);
  const Complex j0(0.9, 0.05);
  const Complex j1(0.02, -0.01);

  SUBCASE("non-interacting gas scatters only from the condensate") {
    const auto geom = ProbeGeometry::from_bragg_angle(0.0, config.spacing);
    const auto params = hubbard(config, 0.03, 0.0);
    const auto line = sf_elastic(geom, couplings(j0, j1, geom), params, bogoliubov_modes(params, config),
                                 config);
    CHECK(line.weight == doctest::Approx(49.0 * std::norm(j0 + 2.0 * j1)).epsilon(1e-12));
  }

  SUBCASE("depletion term against a direct sum") {
    const auto geom = ProbeGeometry::from_bragg_angle(2.0 * kPi, config.spacing);
    const auto params = hubbard(config, 0.03, 0.03);
    const auto modes = bogoliubov_modes(params, config);
    const auto line = sf_elastic(geom, couplings(j0, j1, geom), params, modes, config);
    double sum = 0.0;
    for (int n : {-3, -2, -1, 1, 2, 3}) {
      const double eps = 4.0 * 0.03 * std::pow(std::sin(kPi * n / 7.0), 2);
      const double omega = std::sqrt(eps * eps + 2.0 * 0.03 * eps);
      const double v2 = (eps + 0.03 - omega) / (2.0 * omega);
      sum += v2 * std::real(std::conj(j0 + 2.0 * j1) * (j0 + 2.0 * j1 * std::cos(2.0 * kPi * n / 7.0)));
    }
    const double expected = 49.0 * (std::norm(j0 + 2.0 * j1) + 2.0 / 7.0 * sum);
    CHECK(line.weight == doctest::Approx(expected).epsilon(1e-10));
  }

  SUBCASE("off-grid momentum picks up the grating factor") {
    const auto geom = ProbeGeometry::from_bragg_angle(kPi, config.spacing);
    const auto params = hubbard(config, 0.03, 0.0);
    const auto line = sf_elastic(geom, couplings(j0, 0.0, geom), params, bogoliubov_modes(params, config),
                                 config);
    CHECK(line.weight == doctest::Approx(std::norm(j0)).epsilon(1e-10));
  }
}

TEST_CASE("superfluid Stokes lines") {
  const auto config = ring(7, 7);
  const Complex j0(0.9, 0.05);
  const Complex j1(0.02, -0.01);
  const double omega_r = config.recoil_frequency();

  SUBCASE("a momentum on the ring grid excites one mode") {
    const auto params = hubbard(config, 0.03, 0.03);
    const auto modes = bogoliubov_modes(params, config);
    const auto geom = ProbeGeometry::from_bragg_angle(2.0 * kPi / 7.0, config.spacing);
    const auto lines = sf_stokes(geom, couplings(j0, j1, geom), params, modes, config);
    REQUIRE(lines.size() == modes.size());
    int excited = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (modes[i].index == 1) {
        ++excited;
        const double pd = 2.0 * kPi / 7.0;
        const double s = modes[i].free_energy / modes[i].energy;
        const double expected = 7.0 * s * std::norm(j0 + j1 * (1.0 + std::exp(Complex(0.0, -pd))));
        CHECK(lines[i].weight == doctest::Approx(expected).epsilon(1e-10));
        CHECK(lines[i].frequency == doctest::Approx(modes[i].energy * omega_r));
      } else {
        CHECK(lines[i].weight < 1e-28);
      }
    }
    CHECK(excited == 1);
  }

  SUBCASE("free gas: unit structure factor at the free-particle energy") {
    const auto params = hubbard(config, 0.03, 0.0);
    const auto modes = bogoliubov_modes(params, config);
    const auto geom = ProbeGeometry::from_bragg_angle(-4.0 * kPi / 7.0, config.spacing);
    const auto lines = sf_stokes(geom, couplings(j0, 0.0, geom), params, modes, config);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (modes[i].index == -2) {
        CHECK(lines[i].weight == doctest::Approx(7.0 * std::norm(j0)).epsilon(1e-12));
        CHECK(lines[i].frequency == doctest::Approx(modes[i].free_energy * omega_r));
      }
    }
  }

  SUBCASE("off-grid momentum spreads over modes with non-negative weight") {
    const auto params = hubbard(config, 0.03, 0.03);
    const auto modes = bogoliubov_modes(params, config);
    const auto geom = ProbeGeometry::from_bragg_angle(6.0 * kPi / 7.0 + 0.3, config.spacing);
    for (const auto& l : sf_stokes(geom, couplings(j0, j1, geom), params, modes, config)) {
      CHECK(l.weight >= 0.0);
      CHECK(l.component == Component::stokes);
    }
  }
}

TEST_CASE("Bogoliubov preconditions and regime warning") {
  const auto config = ring(7, 7);
  CHECK_THROWS_AS(bogoliubov_modes(hubbard(config, 0.0, 1.0), config), DomainError);
  CHECK_THROWS_AS(bogoliubov_modes(hubbard(config, 1.0, -1.0), config), DomainError);
  CHECK_FALSE(superfluid_regime_warning(hubbard(config, 1.0, 1.0)).has_value());
  const auto warning = superfluid_regime_warning(hubbard(config, 0.03, 0.51));
  REQUIRE(warning.has_value());
  CHECK(warning->find("U/J = 17") != std::string::npos);
}
