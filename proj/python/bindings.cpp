#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>

#include "dampflow/config.hpp"
#include "dampflow/diagnostics.hpp"
#include "dampflow/errors.hpp"
#include "dampflow/initial_conditions.hpp"
#include "dampflow/integrator.hpp"
#include "dampflow/norms.hpp"
#include "dampflow/operators.hpp"
#include "dampflow/snapshot.hpp"
#include "dampflow/transform.hpp"
#include "dampflow/transport.hpp"

namespace py = pybind11;
using namespace dampflow;

namespace {

py::array_t<std::complex<double>> spectral_to_numpy(const SpectralField& f) {
    const int n = f.grid().n_points();
    py::array_t<std::complex<double>> out({3, n, n, n});
    std::memcpy(out.mutable_data(), f.raw().data(),
                f.raw().size() * sizeof(std::complex<double>));
    return out;
}

SpectralField spectral_from_numpy(const Grid& grid,
                                  py::array_t<std::complex<double>,
                                              py::array::c_style | py::array::forcecast> array) {
    const int n = grid.n_points();
    if (array.ndim() != 4 || array.shape(0) != 3 || array.shape(1) != n || array.shape(2) != n ||
        array.shape(3) != n) {
        throw std::invalid_argument("expected a (3, n, n, n) complex array matching the grid");
    }
    SpectralField f(grid);
    std::memcpy(f.raw().data(), array.data(), f.raw().size() * sizeof(std::complex<double>));
    return f;
}

py::array_t<double> physical_to_numpy(const PhysicalField& f) {
    const int n = f.grid().n_points();
    py::array_t<double> out({3, n, n, n});
    std::memcpy(out.mutable_data(), f.raw().data(), f.raw().size() * sizeof(double));
    return out;
}

PhysicalField physical_from_numpy(const Grid& grid,
                                  py::array_t<double, py::array::c_style | py::array::forcecast>
                                      array) {
    const int n = grid.n_points();
    if (array.ndim() != 4 || array.shape(0) != 3 || array.shape(1) != n || array.shape(2) != n ||
        array.shape(3) != n) {
        throw std::invalid_argument("expected a (3, n, n, n) real array matching the grid");
    }
    PhysicalField f(grid);
    std::memcpy(f.raw().data(), array.data(), f.raw().size() * sizeof(double));
    return f;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pseudo-spectral solver for incompressible Navier-Stokes with exponential damping";

    py::register_exception<OverflowRisk>(m, "OverflowRisk", PyExc_RuntimeError);
    py::register_exception<NonFiniteState>(m, "NonFiniteState", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<EmptyLedger>(m, "EmptyLedger", PyExc_ValueError);

    py::class_<Grid>(m, "Grid", "Periodic box [0, 2*pi*L]^3 on an n^3 collocation lattice")
        .def_property_readonly("n_points", &Grid::n_points)
        .def_property_readonly("box_scale", &Grid::box_scale)
        .def_property_readonly("trunc_radius", &Grid::trunc_radius)
        .def_property_readonly("domain_length", &Grid::domain_length)
        .def("__eq__", [](const Grid& a, const Grid& b) { return a == b; })
        .def("__repr__", [](const Grid& g) {
            return "Grid(n_points=" + std::to_string(g.n_points()) +
                   ", box_scale=" + std::to_string(g.box_scale()) +
                   ", trunc_radius=" + std::to_string(g.trunc_radius()) + ")";
        });
    m.def("make_grid", &make_grid, py::arg("n_points"), py::arg("box_scale"),
          py::arg("trunc_radius"),
          "Validated grid constructor; trunc_radius must lie in (0, (n/3)/L]");
    m.def("max_trunc_radius", &max_trunc_radius, py::arg("n_points"), py::arg("box_scale"),
          "Largest dealiasing-safe truncation radius, (n/3)/L");

    py::class_<SpectralField>(m, "SpectralField",
                              "Three complex coefficient arrays over the wavenumber lattice")
        .def(py::init<Grid>(), py::arg("grid"))
        .def_property_readonly("grid", &SpectralField::grid)
        .def("to_numpy", &spectral_to_numpy,
             "Copy out the coefficients as a (3, n, n, n) complex128 array")
        .def("__add__", [](SpectralField a, const SpectralField& b) { a += b; return a; })
        .def("__sub__", [](SpectralField a, const SpectralField& b) { a -= b; return a; })
        .def("__mul__", [](SpectralField a, double s) { a *= s; return a; })
        .def("__rmul__", [](SpectralField a, double s) { a *= s; return a; });
    m.def("spectral_from_numpy", &spectral_from_numpy, py::arg("grid"), py::arg("coefficients"),
          "Build a spectral field from a (3, n, n, n) complex array (component-major layout)");

    py::class_<PhysicalField>(m, "PhysicalField", "Collocation samples of a velocity field")
        .def_property_readonly("grid", &PhysicalField::grid)
        .def("to_numpy", &physical_to_numpy,
             "Copy out the samples as a (3, n, n, n) float64 array");
    m.def("physical_from_numpy", &physical_from_numpy, py::arg("grid"), py::arg("samples"));

    m.def("forward_transform", &forward_transform, py::arg("field"),
          "u_hat(k) = (1/n^3) sum_x u(x) exp(-i k.x)");
    m.def("inverse_transform", &inverse_transform, py::arg("field"),
          "u(x) = sum_k u_hat(k) exp(+i k.x); imaginary parts dropped");

    m.def("l2_norm", &l2_norm, py::arg("field"));
    m.def("sobolev_norm", &sobolev_norm, py::arg("field"), py::arg("s"));
    m.def("homogeneous_sobolev_norm", &homogeneous_sobolev_norm, py::arg("field"), py::arg("s"));
    m.def("lp_norm", &lp_norm, py::arg("field"), py::arg("p"));
    m.def("max_speed", &max_speed, py::arg("field"));

    m.def("leray_project", &leray_project, py::arg("field"),
          "Divergence-free projection, M(k) = I - k k^T / |k|^2");
    m.def("friedrichs_truncate", &friedrichs_truncate, py::arg("field"), py::arg("radius"),
          "Sharp cutoff keeping modes with |k| <= radius");
    m.def("galerkin_project", &galerkin_project, py::arg("field"),
          "Truncate to the grid ball, then Leray-project");
    m.def("frequency_split", &frequency_split, py::arg("field"), py::arg("kappa"),
          "(low, high) split at |k| < kappa");

    m.def("max_divergence", &max_divergence, py::arg("field"));
    m.def("max_hermitian_asymmetry", &max_hermitian_asymmetry, py::arg("field"));
    m.def("max_coefficient_outside_ball", &max_coefficient_outside_ball, py::arg("field"),
          py::arg("radius"));

    py::class_<DampingParams>(m, "DampingParams", "Parameters of a*(e^{b|u|^r} - 1)u")
        .def(py::init([](double a, double b, double r) { return DampingParams{a, b, r}; }),
             py::arg("a") = 1.0, py::arg("b") = 1.0, py::arg("r") = 4.0)
        .def_readwrite("a", &DampingParams::a)
        .def_readwrite("b", &DampingParams::b)
        .def_readwrite("r", &DampingParams::r);

    py::enum_<ClipPolicy::Mode>(m, "ClipMode")
        .value("error", ClipPolicy::Mode::error)
        .value("saturate", ClipPolicy::Mode::saturate);
    py::class_<ClipPolicy>(m, "ClipPolicy", "Pointwise speed cap ahead of the exponential")
        .def(py::init([](double v_max, ClipPolicy::Mode mode) {
                 ClipPolicy c;
                 c.v_max = v_max;
                 c.mode = mode;
                 return c;
             }),
             py::arg("v_max"), py::arg("mode") = ClipPolicy::Mode::saturate)
        .def_static("saturate_for", &ClipPolicy::saturate_for, py::arg("params"))
        .def_readwrite("v_max", &ClipPolicy::v_max)
        .def_readwrite("mode", &ClipPolicy::mode);

    m.def(
        "damping_term",
        [](const SpectralField& u, const DampingParams& p, const ClipPolicy& clip) {
            return damping_term(u, p, clip);
        },
        py::arg("field"), py::arg("params"), py::arg("clip"),
        "Collocation evaluation of the damping nonlinearity, projected back to the grid ball");
    m.def(
        "damping_dissipation",
        [](const SpectralField& u, const DampingParams& p, const ClipPolicy& clip) {
            return damping_dissipation(u, p, clip);
        },
        py::arg("field"), py::arg("params"), py::arg("clip"),
        "Grid quadrature of (e^{b|u|^r} - 1)|u|^2 (no amplitude factor)");
    m.def("transport_term", &transport_term, py::arg("field"),
          "Dealiased A_n div(u x u) by collocation products");

    m.def("init_taylor_green", &init_taylor_green, py::arg("grid"), py::arg("amplitude"));
    m.def("init_random_divfree", &init_random_divfree, py::arg("grid"), py::arg("seed"),
          py::arg("spectrum_cutoff"), py::arg("amplitude"));

    py::class_<SimParams>(m, "SimParams", "Scalar parameters of a run")
        .def(py::init<>())
        .def_readwrite("nu", &SimParams::nu)
        .def_readwrite("damping", &SimParams::damping)
        .def_readwrite("clip", &SimParams::clip)
        .def_readwrite("dt", &SimParams::dt)
        .def_readwrite("t_end", &SimParams::t_end)
        .def_readwrite("output_every", &SimParams::output_every)
        .def_readwrite("scheme_order", &SimParams::scheme_order)
        .def_readwrite("snapshot_every", &SimParams::snapshot_every);

    py::class_<LedgerRow>(m, "LedgerRow")
        .def_readonly("t", &LedgerRow::t)
        .def_readonly("energy", &LedgerRow::energy)
        .def_readonly("visc_cum", &LedgerRow::visc_cum)
        .def_readonly("damp_cum", &LedgerRow::damp_cum)
        .def_readonly("residual", &LedgerRow::residual)
        .def_readonly("saturation_count", &LedgerRow::saturation_count)
        .def("__repr__", [](const LedgerRow& r) {
            return "LedgerRow(t=" + std::to_string(r.t) + ", energy=" + std::to_string(r.energy) +
                   ")";
        });

    py::class_<SolverState>(m, "SolverState")
        .def(py::init([](double time, const SpectralField& field) {
                 return SolverState{time, field, 0};
             }),
             py::arg("time"), py::arg("field"))
        .def_readonly("time", &SolverState::time)
        .def_readonly("field", &SolverState::field)
        .def_readonly("saturation_count", &SolverState::saturation_count);

    py::class_<RunResult>(m, "RunResult")
        .def_readonly("final_state", &RunResult::final_state)
        .def_property_readonly("rows",
                               [](const RunResult& r) { return r.ledger.rows(); })
        .def_readonly("snapshots", &RunResult::snapshots);

    m.def("step", &step, py::arg("state"), py::arg("params"),
          "One integrating-factor Runge-Kutta step (sub-steps under the damping guard)");
    m.def(
        "run",
        [](const SpectralField& u0, const SimParams& p) { return run(u0, p); },
        py::arg("u0"), py::arg("params"),
        "Integrate to t_end; returns the final state, ledger rows and snapshots");

    py::class_<VerifyResult>(m, "VerifyResult")
        .def_readonly("pass_", &VerifyResult::pass)
        .def_readonly("worst_row", &VerifyResult::worst_row)
        .def_readonly("worst_residual", &VerifyResult::worst_residual)
        .def_readonly("max_abs_residual", &VerifyResult::max_abs_residual)
        .def_readonly("failure", &VerifyResult::failure)
        .def("__bool__", [](const VerifyResult& v) { return v.pass; });
    m.def(
        "verify_energy",
        [](const std::vector<LedgerRow>& rows, double tol) {
            EnergyLedger ledger;
            for (const LedgerRow& row : rows) ledger.append(row);
            return verify_energy(ledger, tol);
        },
        py::arg("rows"), py::arg("tol"),
        "Check ledger rows against the discrete energy inequality");

    m.def(
        "write_snapshot",
        [](const std::filesystem::path& path, const SpectralField& field, double time) {
            write_snapshot(path, field, time);
        },
        py::arg("path"), py::arg("field"), py::arg("time"));
    m.def(
        "read_snapshot",
        [](const std::filesystem::path& path) {
            Snapshot s = read_snapshot(path);
            return py::make_tuple(s.time, s.field);
        },
        py::arg("path"), "Returns (time, field)");
}
