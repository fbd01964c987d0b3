#include "blmhd/commands.hpp"
#include "blmhd/config.hpp"
#include "blmhd/corpus.hpp"
#include "blmhd/energy.hpp"
#include "blmhd/inequalities.hpp"
#include "blmhd/norms.hpp"
#include "blmhd/solver.hpp"
#include "blmhd/sources.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>

namespace py = pybind11;
using namespace blmhd;

namespace {

using GridRef = std::shared_ptr<Grid>;
using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Field to_field(const GridPtr& g, const Array& a) {
    if (a.ndim() != 2 || a.shape(0) != g->nx() || a.shape(1) != g->ny())
        throw std::invalid_argument("expected an array of shape (nx, ny)");
    Field f(g);
    const double* p = a.data();
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = p[k];
    return f;
}

Array to_array(const Field& f) {
    Array a({f.nx(), f.ny()});
    double* p = a.mutable_data();
    for (std::size_t k = 0; k < f.size(); ++k) p[k] = f[k];
    return a;
}

Array to_array(const std::vector<double>& v) {
    Array a(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), a.mutable_data());
    return a;
}

py::dict report_dict(const InequalityReport& r) {
    py::dict d;
    d["inequality"] = r.inequality;
    d["lhs"] = r.lhs;
    d["rhs"] = r.rhs;
    d["ratio"] = r.ratio;
    d["passed"] = r.passed;
    d["hypotheses_met"] = r.hypotheses_met;
    py::dict meta;
    for (const auto& [k, v] : r.metadata) meta[py::str(k)] = v;
    d["metadata"] = meta;
    return d;
}

py::dict monitor_dict(const MonitorStatus& m) {
    py::dict d;
    d["time"] = m.time;
    d["h_floor"] = m.h_floor;
    d["rho_sup"] = m.rho_sup;
    d["shear_sup"] = m.shear_sup;
    d["breached"] = m.breached;
    d["reason"] = m.reason;
    return d;
}

py::dict state_dict(const State& s) {
    py::dict d;
    d["rho"] = to_array(s.rho);
    d["u"] = to_array(s.u);
    d["h"] = to_array(s.h);
    d["v"] = to_array(s.v);
    d["g"] = to_array(s.g);
    d["psi"] = to_array(s.psi);
    d["time"] = s.time;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.attr("__version__") = BLMHD_VERSION;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<MonitorBreach>(m, "MonitorBreach", PyExc_RuntimeError);

    py::class_<Grid, std::shared_ptr<Grid>>(m, "Grid")
        .def(py::init([](int nx, int ny, double y_max, double stretch, bool spectral) {
                 GridSpec s{nx, ny, y_max, stretch, spectral ? XScheme::spectral : XScheme::fd4};
                 s.validate();
                 return std::const_pointer_cast<Grid>(Grid::make(s));
             }),
             py::arg("nx") = 64, py::arg("ny") = 128, py::arg("y_max") = 30.0, py::arg("stretch") = 3.0,
             py::arg("spectral") = false)
        .def_property_readonly("nx", &Grid::nx)
        .def_property_readonly("ny", &Grid::ny)
        .def_property_readonly("x", [](const Grid& g) { return to_array(g.x()); })
        .def_property_readonly("y", [](const Grid& g) { return to_array(g.y()); })
        .def("__repr__", [](const Grid& g) {
            return "Grid(nx=" + std::to_string(g.nx()) + ", ny=" + std::to_string(g.ny()) + ")";
        });

    m.def("preset_names", &preset_names);
    m.def("command_verbs", &command_verbs);

    m.def(
        "weighted_l2", [](const GridRef& g, const Array& a, double l) { return weighted_l2(to_field(g, a), l); },
        py::arg("grid"), py::arg("values"), py::arg("l"));

    m.def(
        "hardy_check",
        [](const GridRef& g, const Array& a, double lam, double tol) { return report_dict(hardy_check(to_field(g, a), lam, tol)); },
        py::arg("grid"), py::arg("values"), py::arg("lam"), py::arg("tol") = 1e-2);

    m.def(
        "sobolev_check",
        [](const GridRef& g, const Array& a, double c_star) { return report_dict(sobolev_check(to_field(g, a), c_star)); },
        py::arg("grid"), py::arg("values"), py::arg("c_star") = 2.0);

    m.def(
        "heat_bound",
        [](int problem, const std::vector<double>& eps, double t) {
            const auto corpus = heat_corpus();
            if (problem < 0 || problem >= static_cast<int>(corpus.size())) throw py::index_error("no such heat problem");
            const HeatBoundResult r = heat_bound_check(corpus[problem], eps, t);
            py::dict d;
            d["problem"] = r.problem;
            d["ratio"] = to_array(r.ratio);
            d["spread"] = r.spread;
            d["max_principle_excess"] = r.max_principle_excess;
            d["passed"] = r.passed;
            return d;
        },
        py::arg("problem"), py::arg("eps"), py::arg("t") = 1.0);

    m.def(
        "initial_state",
        [](const GridRef& g, const std::string& name, double amplitude, double eps) {
            return state_dict(state_from_physical(g, preset(name, amplitude), Physics{1.0, 1.0, eps}));
        },
        py::arg("grid"), py::arg("preset"), py::arg("amplitude") = 0.1, py::arg("eps") = 0.01);

    m.def(
        "simulate",
        [](const GridRef& g, const std::string& name, double amplitude, double eps, double dt, double t_end, int stride,
           int order) {
            SolverConfig cfg;
            cfg.physics = Physics{1.0, 1.0, eps};
            cfg.dt = dt;
            cfg.t_end = t_end;
            cfg.output_stride = stride;
            cfg.validate();
            const State s0 = state_from_physical(g, preset(name, amplitude), cfg.physics);
            std::vector<EnergyReport> rows;
            Trajectory traj;
            {
                py::gil_scoped_release release;
                auto src = std::make_shared<SourceBundle>(bootstrap_time_derivatives(s0, order));
                traj = run(s0, cfg, src);
                rows = trajectory_report(traj, EnergySpec{order, cfg.l, cfg.delta0, false});
            }
            const auto& cols = energy_columns();
            Array table({static_cast<py::ssize_t>(rows.size()), static_cast<py::ssize_t>(cols.size())});
            double* p = table.mutable_data();
            for (const auto& r : rows)
                for (double v : energy_row(r)) *p++ = v;
            py::dict d;
            d["columns"] = cols;
            d["table"] = table;
            d["breached"] = traj.breached;
            d["unbreached_until"] = traj.unbreached_until;
            d["steps"] = traj.steps;
            d["final"] = state_dict(traj.states.back());
            d["monitor"] = monitor_dict(traj.monitor_history.back());
            return d;
        },
        py::arg("grid"), py::arg("preset") = "smooth", py::arg("amplitude") = 0.1, py::arg("eps") = 0.01,
        py::arg("dt") = 1e-2, py::arg("t_end") = 0.1, py::arg("stride") = 1, py::arg("m") = 2);

    m.def(
        "config_digest", [](const std::string& text) { return config_digest(parse_config(text)); }, py::arg("text"));
    m.def("sha256_hex", &sha256_hex, py::arg("data"));

    m.def(
        "run_command",
        [](const std::string& verb, const std::string& text, const std::string& out_dir, std::optional<std::uint64_t> seed,
           bool strict) {
            const RunConfig cfg = parse_config(text);
            CommandResult r;
            {
                py::gil_scoped_release release;
                r = run_command(verb, cfg, out_dir, CommandOptions{seed, strict});
            }
            return py::make_tuple(r.exit_code, r.summary.dump());
        },
        py::arg("verb"), py::arg("config"), py::arg("out_dir"), py::arg("seed") = py::none(), py::arg("strict") = false);
}
