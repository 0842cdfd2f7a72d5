#include "braggsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "braggsim/bogoliubov.hpp"
#include "braggsim/errors.hpp"
#include "braggsim/mott.hpp"

namespace braggsim {

const char* to_string(Backend b) {
  switch (b) {
    case Backend::exact: return "exact";
    case Backend::mott_analytic: return "mott-analytic";
    case Backend::bogoliubov: return "bogoliubov";
  }
  return "unknown";
}

std::optional<Backend> parse_backend(const std::string& name) {
  if (name == "exact") return Backend::exact;
  if (name == "mott-analytic" || name == "mott") return Backend::mott_analytic;
  if (name == "bogoliubov") return Backend::bogoliubov;
  return std::nullopt;
}

namespace {

std::string format_ratio(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", value);
  return buf;
}

// Analytic spectra use the default grid widened to cover their lines.
FrequencyGrid grid_for(const std::vector<SpectralLine>& lines, const HubbardParams& params,
                       double omega_recoil, const SweepSettings& settings) {
  if (settings.grid) return *settings.grid;
  return covering_grid(default_frequency_grid(params, omega_recoil), lines,
                       settings.detection_time);
}

}  // namespace

SweepResult evaluate_cell(const SweepCell& cell, const LatticeSolution& lattice,
                          const FockBasis* basis, const HamiltonianMatrix* h,
                          const SweepSettings& settings) {
  const auto& config = lattice.config;
  const double omega_r = config.recoil_frequency();
  const auto geometry =
      ProbeGeometry::from_bragg_angle(cell.bragg_angle, config.spacing, settings.detection_time);

  SweepResult result;
  result.cell = cell;
  result.lattice = config;
  result.params = lattice.params;
  result.coefficients = coupling_coefficients(lattice.wannier, config, geometry.q);
  if (!cell.include_j1) result.coefficients.j1 = 0.0;

  switch (cell.backend) {
    case Backend::exact: {
      if (basis == nullptr || h == nullptr) throw ShapeError("exact backend needs a Hamiltonian");
      const auto t = build_probe_operator(*basis, result.coefficients, config.spacing,
                                          cell.include_j1, settings.boundary);
      auto spectrum = exact_lines(*h, t, geometry, omega_r, settings.lineshape);
      broaden(spectrum, grid_for(spectrum.lines, lattice.params, omega_r, settings));
      result.spectrum = std::move(spectrum);
      break;
    }
    case Backend::mott_analytic: {
      std::vector<SpectralLine> lines;
      lines.push_back(mott_elastic(geometry, result.coefficients, lattice.params, config));
      auto stokes = mott_stokes(geometry, result.coefficients, lattice.params, config);
      lines.insert(lines.end(), std::make_move_iterator(stokes.begin()),
                   std::make_move_iterator(stokes.end()));
      const auto grid = grid_for(lines, lattice.params, omega_r, settings);
      result.spectrum = assemble_spectrum("mott-analytic", std::move(lines), geometry, omega_r,
                                          grid, settings.lineshape);
      const auto state = mott_ground_state(config.sites, config.atoms / config.sites,
                                           lattice.params.J, lattice.params.U);
      if (state.outside_regime) {
        result.spectrum.warnings.push_back(
            "Mott backend outside its regime: J/U = " + format_ratio(state.J_over_U) +
            " exceeds " + format_ratio(kMottPerturbativeLimit));
      }
      break;
    }
    case Backend::bogoliubov: {
      const auto modes = bogoliubov_modes(lattice.params, config);
      std::vector<SpectralLine> lines;
      lines.push_back(sf_elastic(geometry, result.coefficients, lattice.params, modes, config));
      auto stokes = sf_stokes(geometry, result.coefficients, lattice.params, modes, config);
      lines.insert(lines.end(), std::make_move_iterator(stokes.begin()),
                   std::make_move_iterator(stokes.end()));
      const auto grid = grid_for(lines, lattice.params, omega_r, settings);
      result.spectrum = assemble_spectrum("bogoliubov", std::move(lines), geometry, omega_r, grid,
                                          settings.lineshape);
      if (auto warning = superfluid_regime_warning(lattice.params)) {
        result.spectrum.warnings.push_back(*warning);
      }
      break;
    }
  }
  return result;
}

std::vector<SweepResult> sweep(std::span<const SweepCell> cells, const SweepSettings& settings) {
  settings.lattice.validate();
  if (settings.grid) settings.grid->points();  // validates
  if (!(settings.detection_time > 0.0)) throw DomainError("detection time must be positive");

  // Group cells by depth in order of first appearance.
  std::vector<double> depths;
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto it = std::find(depths.begin(), depths.end(), cells[i].depth);
    if (it == depths.end()) {
      depths.push_back(cells[i].depth);
      members.push_back({i});
    } else {
      members[static_cast<std::size_t>(it - depths.begin())].push_back(i);
    }
  }

  std::vector<std::optional<SweepResult>> slots(cells.size());
  auto run_group = [&](std::size_t g) {
    LatticeConfig config = settings.lattice;
    config.depth = depths[g];
    const auto lattice = solve_lattice(config, settings.plane_wave_cutoff, settings.k_count,
                                       settings.points_per_period);
    const bool needs_exact = std::any_of(members[g].begin(), members[g].end(), [&](std::size_t i) {
      return cells[i].backend == Backend::exact;
    });
    std::optional<FockBasis> basis;
    std::optional<HamiltonianMatrix> h;
    if (needs_exact) {
      basis.emplace(config.sites, config.atoms);
      // A constant -mu N shift does not change any line, so mu is dropped here.
      HubbardParams params = lattice.params;
      params.mu = 0.0;
      h = build_hamiltonian(*basis, params, settings.boundary);
    }
    for (std::size_t i : members[g]) {
      slots[i] = evaluate_cell(cells[i], lattice, basis ? &*basis : nullptr, h ? &*h : nullptr,
                               settings);
    }
  };

  unsigned workers = settings.threads > 0 ? static_cast<unsigned>(settings.threads)
                                          : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(depths.size()));

  if (workers <= 1) {
    for (std::size_t g = 0; g < depths.size(); ++g) run_group(g);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t g = next++; g < depths.size(); g = next++) {
          try {
            run_group(g);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<SweepResult> out;
  out.reserve(cells.size());
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

}  // namespace braggsim
