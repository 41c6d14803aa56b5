// module.cpp — pybind11 bindings exposing the main operations

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pblock/analytics.hpp"
#include "pblock/observables.hpp"
#include "pblock/solver.hpp"

namespace py = pybind11;
using namespace pblock;

namespace {

void register_exceptions(py::module_& m) {
    static py::exception<NoSteadyState> no_steady(m, "NoSteadyState");
    static py::exception<NonPositive> non_positive(m, "NonPositive");
    static py::exception<IntegrationFailure> integration(m, "IntegrationFailure");
    static py::exception<VacuumDenominator> vacuum(m, "VacuumDenominator");
    static py::exception<DegenerateDenominator> degenerate(m, "DegenerateDenominator");
    static py::exception<NoRoot> no_root(m, "NoRoot");
    static py::exception<UndrivenSystem> undriven(m, "UndrivenSystem");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Steady states and phonon correlation statistics of two coupled "
              "mechanical resonators under a finite-temperature Lindblad master equation";
    m.attr("__version__") = PBLOCK_VERSION;

    register_exceptions(m);

    py::enum_<Mode>(m, "Mode")
        .value("one", Mode::one)
        .value("two", Mode::two);

    py::enum_<SteadyMethod>(m, "SteadyMethod")
        .value("trace_replacement", SteadyMethod::trace_replacement)
        .value("smallest_eigenpair", SteadyMethod::smallest_eigenpair);

    py::class_<FockBasis>(m, "FockBasis")
        .def(py::init<int, int>(), py::arg("n1_max"), py::arg("n2_max"))
        .def_readonly("n1_max", &FockBasis::n1_max)
        .def_readonly("n2_max", &FockBasis::n2_max)
        .def_readonly("dim", &FockBasis::dim)
        .def("index", &FockBasis::index, py::arg("m"), py::arg("n"))
        .def("unindex", &FockBasis::unindex, py::arg("idx"))
        .def("__repr__", [](const FockBasis& b) {
            return "FockBasis(" + std::to_string(b.n1_max) + ", " +
                   std::to_string(b.n2_max) + ")";
        });

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init([](double delta, double j, double u, double f, double gamma,
                         double n_th) {
                 SystemParams p{delta, j, u, f, gamma, n_th};
                 p.validate();
                 return p;
             }),
             py::arg("delta") = 0.0, py::arg("j") = 0.0, py::arg("u") = 0.0,
             py::arg("f") = 0.0, py::arg("gamma") = 1.0, py::arg("n_th") = 0.0)
        .def_readwrite("delta", &SystemParams::delta)
        .def_readwrite("j", &SystemParams::coupling_j)
        .def_readwrite("u", &SystemParams::kerr_u)
        .def_readwrite("f", &SystemParams::drive_f)
        .def_readwrite("gamma", &SystemParams::gamma)
        .def_readwrite("n_th", &SystemParams::n_th);

    py::class_<Operator>(m, "Operator")
        .def_readonly("basis", &Operator::basis)
        .def_property_readonly("matrix", [](const Operator& op) { return op.mat; });

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def_readonly("basis", &DensityMatrix::basis)
        .def_property_readonly("matrix", [](const DensityMatrix& r) { return r.mat; });

    py::class_<Superoperator>(m, "Superoperator")
        .def_readonly("basis", &Superoperator::basis)
        .def_property_readonly("dim", [](const Superoperator& l) { return l.mat.rows(); })
        .def("dense", &Superoperator::dense);

    py::class_<SteadyStateReport>(m, "SteadyStateReport")
        .def_readonly("rho", &SteadyStateReport::rho)
        .def_readonly("residual", &SteadyStateReport::residual)
        .def_readonly("method", &SteadyStateReport::method)
        .def_readonly("hermitization_delta", &SteadyStateReport::hermitization_delta)
        .def_readonly("trace_correction", &SteadyStateReport::trace_correction)
        .def_readonly("min_eigenvalue", &SteadyStateReport::min_eigenvalue);

    py::class_<CorrelationSeries>(m, "CorrelationSeries")
        .def_readonly("taus", &CorrelationSeries::taus)
        .def_readonly("values", &CorrelationSeries::values)
        .def_readonly("mean_occupation", &CorrelationSeries::mean_occupation);

    py::class_<PhononDistribution>(m, "PhononDistribution")
        .def_readonly("probabilities", &PhononDistribution::probabilities)
        .def_readonly("mean", &PhononDistribution::mean)
        .def_readonly("truncation_deficit", &PhononDistribution::truncation_deficit);

    py::class_<OptimalPoint>(m, "OptimalPoint")
        .def_readonly("delta_opt", &OptimalPoint::delta_opt)
        .def_readonly("u_opt", &OptimalPoint::u_opt)
        .def_readonly("exact", &OptimalPoint::exact);

    py::class_<RegimeBoundaries>(m, "RegimeBoundaries")
        .def_readonly("t1_over_t0", &RegimeBoundaries::t1_over_t0)
        .def_readonly("t2_over_t0", &RegimeBoundaries::t2_over_t0);

    py::class_<PhysicalEstimate>(m, "PhysicalEstimate")
        .def_readonly("omega0", &PhysicalEstimate::omega0)
        .def_readonly("u_physical", &PhysicalEstimate::u_physical)
        .def_readonly("t0", &PhysicalEstimate::t0)
        .def("n_th_at", &PhysicalEstimate::n_th_at, py::arg("temperature_k"));

    // fock
    m.def("make_basis", &make_basis, py::arg("n1_max"), py::arg("n2_max"));
    m.def("annihilation", &annihilation, py::arg("basis"), py::arg("mode"));
    m.def("creation", &creation, py::arg("basis"), py::arg("mode"));
    m.def("number_operator", &number_operator, py::arg("basis"), py::arg("mode"));
    m.def("vacuum_density", &vacuum_density, py::arg("basis"));
    m.def("density_from_matrix", &density_from_matrix, py::arg("basis"), py::arg("matrix"));

    // lindblad
    m.def("thermal_occupancy",
          [](double t_over_t0) { return thermal_occupancy(Temperature{t_over_t0}); },
          py::arg("t_over_t0"));
    m.def("truncation_adequate", &truncation_adequate, py::arg("params"), py::arg("basis"));
    m.def("build_hamiltonian", &build_hamiltonian, py::arg("params"), py::arg("basis"));
    m.def("build_liouvillian", &build_liouvillian, py::arg("params"), py::arg("basis"));

    // solver
    m.def("steady_state",
          [](const Superoperator& l) { return steady_state(l); }, py::arg("liouvillian"),
          py::call_guard<py::gil_scoped_release>());
    m.def("steady_state_with",
          [](const Superoperator& l, SteadyMethod method) { return steady_state(l, method); },
          py::arg("liouvillian"), py::arg("method"),
          py::call_guard<py::gil_scoped_release>());
    m.def("residual", &residual, py::arg("liouvillian"), py::arg("rho"));
    m.def("propagate",
          [](const Superoperator& l, const DensityMatrix& rho0, double t_final,
             int n_samples) {
              std::vector<std::pair<double, DensityMatrix>> out;
              for (auto& s : propagate(l, rho0, t_final, n_samples)) {
                  out.emplace_back(s.time, std::move(s.rho));
              }
              return out;
          },
          py::arg("liouvillian"), py::arg("rho0"), py::arg("t_final"), py::arg("n_samples"),
          py::call_guard<py::gil_scoped_release>());

    // observables
    m.def("g2_zero", &g2_zero, py::arg("rho"), py::arg("mode"));
    m.def("mean_phonon", &mean_phonon, py::arg("rho"), py::arg("mode"));
    m.def("g2_tau", &g2_tau, py::arg("liouvillian"), py::arg("rho_ss"), py::arg("mode"),
          py::arg("taus"), py::call_guard<py::gil_scoped_release>());
    m.def("phonon_distribution", &phonon_distribution, py::arg("rho"), py::arg("mode"));
    m.def("poisson_reference", &poisson_reference, py::arg("mean"), py::arg("m_max"));
    m.def("fit_oscillation", &fit_oscillation, py::arg("series"));

    // analytics
    m.def("rho66_zero_t", &rho66_zero_t, py::arg("params"));
    m.def("rho44_finite_t", &rho44_finite_t, py::arg("params"));
    m.def("rho66_finite_t", &rho66_finite_t, py::arg("params"));
    m.def("g2_analytic", &g2_analytic, py::arg("params"));
    m.def("optimal_exact", &optimal_exact, py::arg("j"), py::arg("gamma"),
          py::arg("positive_branch") = true);
    m.def("optimal_approx", &optimal_approx, py::arg("j"), py::arg("gamma"));
    m.def("boundary_temperatures", &boundary_temperatures, py::arg("params"));
    m.def("physical_estimate", &physical_estimate, py::arg("width_d"), py::arg("length_l"),
          py::arg("youngs_e") = constants::silicon_youngs_modulus,
          py::arg("density_rho") = constants::silicon_density);
}
