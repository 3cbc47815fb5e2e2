#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cyclebound/bounds.hpp"
#include "cyclebound/error.hpp"
#include "cyclebound/harness.hpp"
#include "cyclebound/lvroot.hpp"
#include "cyclebound/model.hpp"
#include "cyclebound/proofcheck.hpp"
#include "cyclebound/region4.hpp"
#include "cyclebound/simulator.hpp"

namespace py = pybind11;
using namespace cyclebound;

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Limit-cycle bounds for the Rosenzweig-MacArthur predator-prey system";

    py::register_exception<SimulationError>(mod, "SimulationError", PyExc_RuntimeError);
    py::register_exception<NoRootError>(mod, "NoRootError", PyExc_ValueError);

    py::class_<Params>(mod, "Params")
        .def(py::init<double, double, double>(), py::arg("a"), py::arg("lam"), py::arg("m"))
        .def_static("limit", &Params::limit, py::arg("a"), py::arg("lam"), py::arg("m"))
        .def_property_readonly("a", &Params::a)
        .def_property_readonly("lam", &Params::lambda)
        .def_property_readonly("m", &Params::m)
        .def_property_readonly("h_lambda", &Params::h_lambda)
        .def_property_readonly("limit_mode", &Params::limit_mode)
        .def("cycle_regime", &Params::cycle_regime)
        .def("star_star", &Params::star_star)
        .def("__repr__", [](const Params& p) {
            return "Params(a=" + py::repr(py::float_(p.a())).cast<std::string>() +
                   ", lam=" + py::repr(py::float_(p.lambda())).cast<std::string>() +
                   ", m=" + py::repr(py::float_(p.m())).cast<std::string>() + ")";
        });

    mod.def("h", py::overload_cast<double, double>(&h), py::arg("s"), py::arg("a"));

    py::enum_<ZIndex>(mod, "ZIndex").value("Z0", ZIndex::Z0).value("Z1", ZIndex::Z1).value("Z2", ZIndex::Z2);
    mod.def("z", &z, py::arg("i"), py::arg("y"));
    mod.def("z_exact", &z_exact, py::arg("y"));
    mod.def("lv_small_root", &lv_small_root, py::arg("A"), py::arg("C"));
    mod.def("lv_small_root_log", &lv_small_root_log, py::arg("A"), py::arg("C"));

    py::class_<BoundSet>(mod, "BoundSet")
        .def_readonly("x_max_lo", &BoundSet::x_max_lo)
        .def_readonly("x_max_hi", &BoundSet::x_max_hi)
        .def_readonly("ln_x_min_lo", &BoundSet::ln_x_min_lo)
        .def_readonly("ln_x_min_hi", &BoundSet::ln_x_min_hi)
        .def_readonly("ln_s_min_lo", &BoundSet::ln_s_min_lo)
        .def_readonly("ln_s_min_hi", &BoundSet::ln_s_min_hi)
        .def_readonly("s_max_lo", &BoundSet::s_max_lo)
        .def_readonly("s_max_hi", &BoundSet::s_max_hi)
        .def_readonly("s0", &BoundSet::s0)
        .def_readonly("proven", &BoundSet::proven);

    py::class_<CanardEstimates>(mod, "CanardEstimates")
        .def_readonly("x_max_c", &CanardEstimates::x_max_c)
        .def_readonly("x_min_c", &CanardEstimates::x_min_c)
        .def_readonly("s_max_c", &CanardEstimates::s_max_c)
        .def_readonly("ln_s_min_c", &CanardEstimates::ln_s_min_c);

    mod.def("x1_upper", py::overload_cast<const Params&>(&x1_upper), py::arg("p"));
    mod.def("x1_lower", &x1_lower, py::arg("p"), py::arg("s0") = 0.8);
    mod.def(
        "theorem_a",
        [](const Params& p, double s0, bool force) { return theorem_a(p, {s0, force}); },
        py::arg("p"), py::arg("s0") = 0.8, py::arg("force") = false);
    mod.def("canard", &canard, py::arg("p"));

    py::enum_<Region4Case>(mod, "Region4Case").value("A", Region4Case::A).value("B", Region4Case::B);
    mod.def("eta_hat", &eta_hat, py::arg("m"), py::arg("case"));
    mod.def("find_m1", &find_m1, py::arg("case"));

    py::class_<SimConfig>(mod, "SimConfig")
        .def(py::init<>())
        .def_readwrite("rtol", &SimConfig::rtol)
        .def_readwrite("atol_log", &SimConfig::atol_log)
        .def_readwrite("cycle_tol", &SimConfig::cycle_tol)
        .def_readwrite("max_steps", &SimConfig::max_steps);
    mod.def("apply_env", &apply_env, py::arg("cfg"));

    py::class_<CycleExtremes>(mod, "CycleExtremes")
        .def_readonly("x_max", &CycleExtremes::x_max)
        .def_readonly("s_max", &CycleExtremes::s_max)
        .def_readonly("ln_s_max", &CycleExtremes::ln_s_max)
        .def_readonly("ln_x_min", &CycleExtremes::ln_x_min)
        .def_readonly("ln_s_min", &CycleExtremes::ln_s_min)
        .def_readonly("period", &CycleExtremes::period)
        .def_readonly("converged", &CycleExtremes::converged)
        .def_readonly("iterations", &CycleExtremes::iterations)
        .def_readonly("nonfinite", &CycleExtremes::nonfinite);
    mod.def(
        "limit_cycle", [](const Params& p, const SimConfig& cfg) { return limit_cycle(p, cfg); }, py::arg("p"),
        py::arg("cfg") = SimConfig{}, py::call_guard<py::gil_scoped_release>());

    py::class_<Margins>(mod, "Margins")
        .def_readonly("x_max_lo", &Margins::x_max_lo)
        .def_readonly("x_max_hi", &Margins::x_max_hi)
        .def_readonly("ln_x_min_lo", &Margins::ln_x_min_lo)
        .def_readonly("ln_x_min_hi", &Margins::ln_x_min_hi)
        .def_readonly("ln_s_min_lo", &Margins::ln_s_min_lo)
        .def_readonly("ln_s_min_hi", &Margins::ln_s_min_hi)
        .def_readonly("s_max_lo", &Margins::s_max_lo)
        .def_readonly("s_max_hi", &Margins::s_max_hi)
        .def("min", &Margins::min);
    py::class_<CycleReport>(mod, "CycleReport")
        .def_readonly("params", &CycleReport::params)
        .def_readonly("extremes", &CycleReport::extremes)
        .def_readonly("bounds", &CycleReport::bounds)
        .def_readonly("margins", &CycleReport::margins);
    mod.def(
        "cycle_report",
        [](const Params& p, const SimConfig& cfg, double s0, bool force) {
            return cycle_extreme_report(p, cfg, {s0, force});
        },
        py::arg("p"), py::arg("cfg") = SimConfig{}, py::arg("s0") = 0.8, py::arg("force") = false,
        py::call_guard<py::gil_scoped_release>());

    mod.def(
        "sweep_csv",
        [](const std::string& spec_json, int jobs) {
            SweepSpec spec = sweep_spec_from_json(nlohmann::json::parse(spec_json));
            if (jobs > 0) spec.jobs = jobs;
            SweepReport rep;
            {
                py::gil_scoped_release release;
                rep = run_sweep(spec);
            }
            return py::make_tuple(sweep_csv(rep), rep.exit_code());
        },
        py::arg("spec_json"), py::arg("jobs") = 0);
    mod.attr("SWEEP_CSV_HEADER") = kSweepCsvHeader;

    mod.def(
        "proofcheck",
        [](Region4Case c) {
            const ProofCheckReport rep = proof_spotchecks(c);
            py::dict out;
            for (const CheckResult& r : rep.checks) out[py::str(r.name)] = py::make_tuple(r.passed, r.margin, r.value);
            return out;
        },
        py::arg("case"));
}
