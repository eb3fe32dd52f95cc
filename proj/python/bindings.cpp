// Python bindings for the fene2d core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "fene/error.hpp"
#include "fene/harness.hpp"

namespace py = pybind11;
using namespace fene;

namespace {

py::dict row_dict(const DiagnosticsRow& r) {
    py::dict d;
    d["t"] = r.t;
    d["energy_u"] = r.energy_u;
    d["enstrophy"] = r.enstrophy;
    d["entropy2"] = r.entropy2;
    d["dissipation"] = r.dissipation;
    d["entropy_p"] = r.entropy_p;
    d["tau_l2"] = r.tau_l2;
    d["tau_l1"] = r.tau_l1;
    d["besov_b011"] = r.besov_b011;
    d["splitting_integral"] = r.splitting_integral;
    d["l1lp_norm"] = r.l1lp_norm;
    d["cum_u3"] = r.cum_u3;
    d["mass_defect"] = r.mass_defect;
    return d;
}

py::dict series(const std::vector<DiagnosticsRow>& rows) {
    py::dict out;
    for (const DiagnosticsRow& r : rows)
        for (auto item : row_dict(r)) {
            const py::str key = py::reinterpret_borrow<py::str>(item.first);
            if (!out.contains(key)) out[key] = py::list();
            out[key].cast<py::list>().append(item.second);
        }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "2D co-rotation FENE dumbbell numerical lab";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ConstructionError>(m, "ConstructionError", PyExc_RuntimeError);
    py::register_exception<StepSizeError>(m, "StepSizeError", PyExc_RuntimeError);
    py::register_exception<BlowUpError>(m, "BlowUpError", PyExc_RuntimeError);

    py::class_<FeneParams>(m, "FeneParams")
        .def(py::init<>())
        .def(py::init([](double k, int n_r, int m_max) { return FeneParams{k, n_r, m_max}; }), py::arg("k"),
             py::arg("n_r"), py::arg("m_max") = 2)
        .def_readwrite("k", &FeneParams::k)
        .def_readwrite("n_r", &FeneParams::n_r)
        .def_readwrite("m_max", &FeneParams::m_max);

    py::class_<TorusGrid>(m, "TorusGrid")
        .def(py::init<>())
        .def_readwrite("nx", &TorusGrid::nx)
        .def_readwrite("ny", &TorusGrid::ny)
        .def_readwrite("L", &TorusGrid::L);

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("fene", &RunConfig::fene)
        .def_readwrite("grid", &RunConfig::grid)
        .def_readwrite("dt", &RunConfig::dt)
        .def_readwrite("t_end", &RunConfig::t_end)
        .def_readwrite("sample_every", &RunConfig::sample_every)
        .def_readwrite("u_preset", &RunConfig::u_preset)
        .def_readwrite("u_amplitude", &RunConfig::u_amplitude)
        .def_readwrite("xi_cut", &RunConfig::xi_cut)
        .def_readwrite("seed", &RunConfig::seed)
        .def_readwrite("g_preset", &RunConfig::g_preset)
        .def_readwrite("g_amplitude", &RunConfig::g_amplitude)
        .def_readwrite("envelope_scale", &RunConfig::envelope_scale)
        .def_readwrite("p_entropy_p", &RunConfig::p_entropy_p)
        .def("validate", &RunConfig::validate)
        .def("canonical_text", [](const RunConfig& c) { return canonical_text(c); });

    m.def("parse_config", &parse_config, py::arg("text"));
    m.def("load_config", &load_config, py::arg("path"));

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("slope", &FitResult::slope)
        .def_readonly("intercept", &FitResult::intercept)
        .def_readonly("r2", &FitResult::r2);
    m.def("decay_fit", &decay_fit, py::arg("t"), py::arg("value"), py::arg("t0"), py::arg("t1"));
    m.def("exp_fit", &exp_fit, py::arg("t"), py::arg("value"), py::arg("t0"), py::arg("t1"));

    m.def(
        "spectral_gap",
        [](double k, int n_r, int m_max) { return spectral_gap(ConfigBasis(FeneParams{k, n_r, m_max})); },
        py::arg("k"), py::arg("n_r"), py::arg("m_max") = 2);
    m.def(
        "gauss_jacobi",
        [](int n, double alpha, double beta) {
            const QuadratureRule q = gauss_jacobi(n, alpha, beta);
            return py::make_tuple(q.nodes, q.weights);
        },
        py::arg("n"), py::arg("alpha"), py::arg("beta"));

    py::class_<RunResult>(m, "RunResult")
        .def_readonly("status", &RunResult::status)
        .def_readonly("message", &RunResult::message)
        .def_property_readonly("series", [](const RunResult& r) { return series(r.history); })
        .def_property_readonly("t", [](const RunResult& r) { return r.final_state.t; });

    m.def(
        "run_simulation",
        [](const RunConfig& cfg, const std::filesystem::path& out) {
            py::gil_scoped_release release;
            return run_simulation(cfg, out);
        },
        py::arg("config"), py::arg("out_dir") = std::filesystem::path());
    m.def(
        "run_heat_baseline",
        [](const RunConfig& cfg, const std::filesystem::path& out) {
            py::gil_scoped_release release;
            return run_heat_baseline(cfg, out);
        },
        py::arg("config"), py::arg("out_dir") = std::filesystem::path());

    m.def(
        "checkpoint_norms",
        [](const std::filesystem::path& path) {
            const Checkpoint ck = load_checkpoint(path);
            const Torus torus(ck.config.grid);
            const NodalVector u = to_nodal(torus, ck.u);
            py::dict d;
            d["t"] = ck.t;
            d["besov_b011"] = besov_b011(torus, DyadicFamily(torus), ck.u);
            d["l1"] = lp_norm(torus, u.v1, u.v2, 1.0);
            d["config_text"] = ck.config_text;
            return d;
        },
        py::arg("path"));

    m.def(
        "run_suite",
        [](const std::string& suite) {
            std::vector<std::tuple<std::string, bool, std::string>> out;
            std::vector<CheckLine> lines;
            {
                py::gil_scoped_release release;
                lines = run_suite(suite);
            }
            for (const CheckLine& l : lines) out.emplace_back(l.name, l.pass, l.detail);
            return out;
        },
        py::arg("suite"));

    m.def("read_csv_column", &read_csv_column, py::arg("path"), py::arg("column"));
    m.attr("CSV_HEADER") = kCsvHeader;
    m.attr("__version__") = version_string();
}
