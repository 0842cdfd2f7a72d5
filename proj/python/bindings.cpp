#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "braggsim/bogoliubov.hpp"
#include "braggsim/config.hpp"
#include "braggsim/errors.hpp"
#include "braggsim/output.hpp"
#include "braggsim/sweep.hpp"

namespace py = pybind11;
using namespace braggsim;

namespace {

py::dict line_dict(const SpectralLine& l, double omega_r) {
  py::dict d;
  d["component"] = to_string(l.component);
  d["omega_over_omegaR"] = l.frequency / omega_r;
  d["weight"] = l.weight;
  d["label"] = l.label;
  return d;
}

py::dict result_dict(const SweepResult& r) {
  const double omega_r = r.spectrum.omega_recoil;
  py::list lines;
  for (const auto& l : r.spectrum.lines) lines.append(line_dict(l, omega_r));
  std::vector<double> grid;
  grid.reserve(r.spectrum.grid.size());
  for (double w : r.spectrum.grid) grid.push_back(w / omega_r);
  py::dict d;
  d["backend"] = to_string(r.cell.backend);
  d["v0"] = r.cell.depth;
  d["theta"] = r.cell.bragg_angle;
  d["include_j1"] = r.cell.include_j1;
  d["J"] = r.params.J;
  d["U"] = r.params.U;
  d["lines"] = lines;
  d["grid"] = grid;
  d["elastic"] = r.spectrum.elastic_curve;
  d["stokes"] = r.spectrum.stokes_curve;
  d["elastic_weight"] = r.spectrum.elastic_weight();
  d["stokes_weight"] = r.spectrum.stokes_weight();
  d["warnings"] = r.spectrum.warnings;
  return d;
}

}  // namespace

PYBIND11_MODULE(_braggsim, m) {
  m.doc() = "Bragg-scattering spectra of bosons in a 1D optical lattice";

  py::register_exception<Error>(m, "Error");

  py::class_<LatticeConfig>(m, "LatticeConfig")
      .def(py::init<>())
      .def_readwrite("depth", &LatticeConfig::depth)
      .def_readwrite("spacing", &LatticeConfig::spacing)
      .def_readwrite("mass", &LatticeConfig::mass)
      .def_readwrite("scattering_length", &LatticeConfig::scattering_length)
      .def_readwrite("transverse_frequency", &LatticeConfig::transverse_frequency)
      .def_readwrite("sites", &LatticeConfig::sites)
      .def_readwrite("atoms", &LatticeConfig::atoms)
      .def("recoil_frequency", &LatticeConfig::recoil_frequency)
      .def("transverse_length", &LatticeConfig::transverse_length);

  m.def(
      "hubbard_parameters",
      [](const LatticeConfig& config) {
        const auto s = solve_lattice(config);
        py::dict d;
        d["J"] = s.params.J;
        d["U"] = s.params.U;
        d["mu"] = s.params.mu;
        d["J_dispersion"] = s.params.J_dispersion;
        return d;
      },
      py::arg("config"));

  m.def(
      "bogoliubov_modes",
      [](double J, double U, int sites, int atoms) {
        LatticeConfig config;
        config.sites = sites;
        config.atoms = atoms;
        HubbardParams p;
        p.J = J;
        p.U = U;
        p.sites = sites;
        p.atoms = atoms;
        py::list out;
        for (const auto& mode : bogoliubov_modes(p, config)) {
          py::dict d;
          d["index"] = mode.index;
          d["energy"] = mode.energy;
          d["u"] = mode.u;
          d["v"] = mode.v;
          out.append(d);
        }
        return out;
      },
      py::arg("J"), py::arg("U"), py::arg("sites"), py::arg("atoms"));

  m.def("diffraction_kernel", &diffraction_kernel, py::arg("omega"), py::arg("T"));
  m.def("bloch_momentum_factor", &bloch_momentum_factor, py::arg("qx"), py::arg("spacing"),
        py::arg("sites"));

  m.def(
      "spectrum",
      [](double v0, double theta, const std::string& backend, bool include_j1,
         const LatticeConfig& lattice, double detection_time) {
        const auto b = parse_backend(backend);
        if (!b) throw UsageError("unknown backend '" + backend + "'");
        SweepSettings settings;
        settings.lattice = lattice;
        settings.detection_time = detection_time;
        const std::vector<SweepCell> cells{{v0, theta, *b, include_j1}};
        std::vector<SweepResult> results;
        {
          py::gil_scoped_release release;
          results = sweep(cells, settings);
        }
        return result_dict(results.front());
      },
      py::arg("v0"), py::arg("theta"), py::arg("backend") = "exact", py::arg("include_j1") = true,
      py::arg("lattice") = LatticeConfig{}, py::arg("detection_time") = 3e-3);

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        const auto config = parse_config(args);
        std::ostringstream log;
        const int status = run(config, log);
        return py::make_tuple(status, log.str());
      },
      py::arg("args"));
}
