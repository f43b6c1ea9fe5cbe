#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qrabi/adiabatic.hpp"
#include "qrabi/dynamics.hpp"
#include "qrabi/errors.hpp"
#include "qrabi/frame.hpp"
#include "qrabi/harness.hpp"
#include "qrabi/model.hpp"
#include "qrabi/rwa.hpp"
#include "qrabi/solver.hpp"

namespace py = pybind11;
using namespace qrabi;

PYBIND11_MODULE(_qrabi, m) {
    m.doc() = "two-level system + one mode with simultaneous one- and two-photon couplings";

    py::register_exception<collapse_error>(m, "CollapseError", PyExc_ValueError);
    py::register_exception<degenerate_root_error>(m, "DegenerateRootError", PyExc_ArithmeticError);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double delta, double g1, double g2, double epsilon) {
                 return ModelParams{delta, g1, g2, epsilon};
             }),
             py::arg("delta") = 0.5, py::arg("g1") = 0.0, py::arg("g2") = 0.0,
             py::arg("epsilon") = 0.0)
        .def_readwrite("delta", &ModelParams::delta)
        .def_readwrite("g1", &ModelParams::g1)
        .def_readwrite("g2", &ModelParams::g2)
        .def_readwrite("epsilon", &ModelParams::epsilon)
        .def("__repr__", [](const ModelParams& p) {
            return "ModelParams(delta=" + std::to_string(p.delta) + ", g1=" +
                   std::to_string(p.g1) + ", g2=" + std::to_string(p.g2) + ", epsilon=" +
                   std::to_string(p.epsilon) + ")";
        });

    py::class_<TruncatedSpectrum>(m, "TruncatedSpectrum")
        .def_readonly("n_tr", &TruncatedSpectrum::n_tr)
        .def_readonly("eigenvalues", &TruncatedSpectrum::eigenvalues)
        .def_readonly("eigenvectors", &TruncatedSpectrum::eigenvectors)
        .def_readonly("converged_count", &TruncatedSpectrum::converged_count)
        .def_readonly("tail_weight", &TruncatedSpectrum::tail_weight);

    m.def("lab_hamiltonian", &lab_hamiltonian, py::arg("params"), py::arg("n_tr"));
    m.def("rotated_hamiltonian", &rotated_hamiltonian, py::arg("params"), py::arg("n_tr"));
    m.def("rwa_hamiltonian", &rwa_hamiltonian, py::arg("params"), py::arg("n_tr"));

    m.def("solve_fock", &solve_fock, py::arg("params"), py::arg("n_tr") = 60,
          py::arg("k") = 12);
    m.def("solve_bogoliubov", &solve_bogoliubov, py::arg("params"), py::arg("n_tr") = 60,
          py::arg("k") = 12);
    m.def("solve_rwa_fock", &solve_rwa_fock, py::arg("params"), py::arg("n_tr") = 60,
          py::arg("k") = 12);

    m.def(
        "overlap_matrix",
        [](double g1, double g2, int size) {
            return overlap_matrix(frame_from_params(g1, g2), size).entries;
        },
        py::arg("g1"), py::arg("g2"), py::arg("size"),
        "displaced-squeezed family overlaps <m_A|n_B> as a dense matrix");

    m.def(
        "vacuum_projections",
        [](double g1, double g2, int m_max) {
            const VacuumProjections pr = vacuum_projections(frame_from_params(g1, g2), m_max);
            return py::make_tuple(pr.a, pr.b);
        },
        py::arg("g1"), py::arg("g2"), py::arg("m_max"));

    m.def(
        "adiabatic_levels",
        [](const ModelParams& p, int m_max) {
            const std::vector<AdiabaticLevel> ls =
                (p.epsilon == 0.0) ? adiabatic_levels(p, m_max) : biased_levels(p, m_max);
            py::list out;
            for (const AdiabaticLevel& l : ls) {
                out.append(py::dict(
                    py::arg("m") = l.m, py::arg("energy_plus") = l.energy_plus,
                    py::arg("energy_minus") = l.energy_minus, py::arg("c_plus") = l.c_plus,
                    py::arg("d_plus") = l.d_plus, py::arg("c_minus") = l.c_minus,
                    py::arg("d_minus") = l.d_minus));
            }
            return out;
        },
        py::arg("params"), py::arg("m_max") = 20,
        "per-manifold two-branch closed form (uses the biased variant when epsilon != 0)");

    py::enum_<RwaBranch>(m, "RwaBranch")
        .value("Type1", RwaBranch::Type1)
        .value("Type2", RwaBranch::Type2);

    m.def(
        "rwa_energy",
        [](RwaBranch br, int n, const ModelParams& p) {
            bool warn = false;
            const double e = rwa_energy(br, n, p, &warn);
            return py::make_tuple(e, warn);
        },
        py::arg("branch"), py::arg("n"), py::arg("params"),
        "(energy, selection_warning) of the chosen block branch");

    m.def(
        "rabi_frequencies",
        [](int n, const ModelParams& p) {
            const RabiFrequencies rf = rabi_frequencies(n, p);
            return py::make_tuple(rf.omega_1, rf.omega_2, rf.selection_warning);
        },
        py::arg("n"), py::arg("params"));

    m.def("time_grid", &time_grid, py::arg("t_max"), py::arg("dt"));

    m.def(
        "exact_dynamics",
        [](const Eigen::MatrixXd& h, const Eigen::VectorXd& psi0,
           const std::vector<double>& t) {
            const TimeSeries s = exact_dynamics(h, psi0, t);
            return py::make_tuple(s.t, s.value);
        },
        py::arg("hamiltonian"), py::arg("initial"), py::arg("t_grid"));

    m.def(
        "adiabatic_dynamics",
        [](const ModelParams& p, const std::vector<double>& t) {
            const TimeSeries s = adiabatic_dynamics(p, t);
            return py::make_tuple(s.t, s.value);
        },
        py::arg("params"), py::arg("t_grid"));

    m.def(
        "rwa_population",
        [](int n, const ModelParams& p, const std::vector<double>& t) {
            const TimeSeries s = rwa_population(n, p, t);
            return py::make_tuple(s.t, s.value);
        },
        py::arg("n"), py::arg("params"), py::arg("t_grid"));

    const auto spectrum_tuple = [](const EmissionSpectrum& s) {
        std::vector<double> nu, w;
        for (const EmissionLine& l : s.lines) {
            nu.push_back(l.frequency);
            w.push_back(l.weight);
        }
        return py::make_tuple(nu, w, s.total_weight, s.cutoff_warning);
    };
    m.def(
        "emission_spectrum_rwa",
        [spectrum_tuple](const ModelParams& p) { return spectrum_tuple(emission_spectrum_rwa(p)); },
        py::arg("params"), "(frequencies, weights, total_weight, cutoff_warning)");
    m.def(
        "emission_spectrum_full",
        [spectrum_tuple](const ModelParams& p, int m_max) {
            return spectrum_tuple(emission_spectrum_full(p, m_max));
        },
        py::arg("params"), py::arg("m_max") = 60,
        "(frequencies, weights, total_weight, cutoff_warning)");

    m.def(
        "validation_report",
        [](const std::string& inject_fault) {
            py::list out;
            for (const ValidationCheck& c : run_validation_checks(inject_fault)) {
                out.append(py::dict(py::arg("name") = c.name,
                                    py::arg("tolerance") = c.tolerance,
                                    py::arg("observed") = c.observed, py::arg("pass") = c.pass,
                                    py::arg("note") = c.note));
            }
            return out;
        },
        py::arg("inject_fault") = std::string(),
        "the cross-module invariant suite as a list of dicts");
}
