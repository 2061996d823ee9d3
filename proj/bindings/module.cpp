// Python bindings for the main operations: channel runs, the shear-layer
// oracle, the wall cube decomposition with its weak-norm statistics, the
// relaxed-Euler subsolution, and the bound assembly.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "layersep/bounds.hpp"
#include "layersep/decomposition.hpp"
#include "layersep/experiment.hpp"
#include "layersep/maximal.hpp"
#include "layersep/prandtl.hpp"
#include "layersep/rescale.hpp"
#include "layersep/solver.hpp"
#include "layersep/subsolution.hpp"

namespace py = pybind11;
using namespace layersep;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {

    py::array_t<double> a(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), a.mutable_data());
    return a;
}

py::array_t<double> field_u(const VelocityField& f) {
    py::array_t<double> a({f.ny(), f.nx()});
    std::copy(f.u_data().begin(), f.u_data().end(), a.mutable_data());
    return a;
}

py::array_t<double> field_v(const VelocityField& f) {
    py::array_t<double> a({f.ny() + 1, f.nx()});
    std::copy(f.v_data().begin(), f.v_data().end(), a.mutable_data());
    return a;
}

VelocityField field_from_arrays(const Grid& g, py::array_t<double> u, py::array_t<double> v) {
    if (u.ndim() != 2 || u.shape(0) != g.ny || u.shape(1) != g.nx)
        throw ShapeError("u must have shape (ny, nx)");
    if (v.ndim() != 2 || v.shape(0) != g.ny + 1 || v.shape(1) != g.nx)
        throw ShapeError("v must have shape (ny+1, nx)");
    VelocityField f(g);
    auto ub = u.unchecked<2>();
    auto vb = v.unchecked<2>();
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) f.u(i, j) = ub(j, i);
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) f.v(i, j) = vb(j, i);
    return f;
}

SampledDensity density_from_array(py::array_t<double> values, double T, double W, double H) {
    if (values.ndim() != 3) throw ShapeError("density values must have shape (nt, ny, nx)");
    SampledDensity d(static_cast<int>(values.shape(0)), static_cast<int>(values.shape(2)),
                     static_cast<int>(values.shape(1)), T, W, H);
    auto b = values.unchecked<3>();
    for (int k = 0; k < d.nt(); ++k)
        for (int j = 0; j < d.ny(); ++j)
            for (int i = 0; i < d.nx(); ++i) d.at(k, i, j) = b(k, j, i);
    return d;
}

py::dict cube_dict(const ParabolicCube& c) {
    py::dict d;
    d["gen"] = c.gen;
    d["wall"] = c.wall == Wall::bottom ? "bottom" : "top";
    d["s"] = c.s;
    d["t"] = c.t;
    d["xc"] = c.xc;
    d["w"] = c.w;
    d["h"] = c.h;
    d["r"] = c.r;
    d["clipped"] = c.clipped;
    d["avg_dissipation"] = c.suit_avg;
    d["parent_avg"] = c.parent_avg;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "channel-flow layer separation laboratory";


    py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);
    py::register_exception<InvalidConfigError>(m, "InvalidConfigError", PyExc_ValueError);
    py::register_exception<ResolutionError>(m, "ResolutionErrorPy", PyExc_RuntimeError);
    py::register_exception<HorizonError>(m, "HorizonError", PyExc_ValueError);

    py::enum_<Wall>(m, "Wall").value("bottom", Wall::bottom).value("top", Wall::top);

    py::class_<ChannelGeometry>(m, "ChannelGeometry")
        .def(py::init<double, double, int>(), py::arg("W"), py::arg("H"), py::arg("d") = 2)
        .def_readonly("W", &ChannelGeometry::W)
        .def_readonly("H", &ChannelGeometry::H)
        .def("area", &ChannelGeometry::area)
        .def("boundary_measure", &ChannelGeometry::boundary_measure);

    py::class_<Grid>(m, "Grid")
        .def(py::init<const ChannelGeometry&, int, int>(), py::arg("geometry"), py::arg("nx"),
             py::arg("ny"))
        .def_readonly("nx", &Grid::nx)
        .def_readonly("ny", &Grid::ny)
        .def_readonly("dx", &Grid::dx)
        .def_readonly("dy", &Grid::dy);

    py::class_<VelocityField>(m, "VelocityField")
        .def(py::init<const Grid&>())
        .def_property_readonly("u", &field_u)
        .def_property_readonly("v", &field_v);
    m.def("velocity_from_arrays", &field_from_arrays, py::arg("grid"), py::arg("u"), py::arg("v"));

    m.def("l2_norm",
          [](const Grid& g, const VelocityField& f) { return l2_norm(g, f); });
    m.def("kinetic_energy", &kinetic_energy);
    m.def("divergence_max", [](const Grid& g, const VelocityField& f) {
        const ScalarField d = divergence(g, f);
        double mx = 0.0;
        for (double v : d.data()) mx = std::max(mx, std::abs(v));
        return mx;
    });
    m.def("wall_vorticity", [](const Grid& g, const VelocityField& f, Wall w) {
        return to_array(wall_vorticity(g, f, w));
    });
    m.def("curl2d", [](const Grid& g, const VelocityField& f) {
        py::array_t<double> a({g.ny + 1, g.nx});
        const std::vector<double> w = curl2d(g, f);
        std::copy(w.begin(), w.end(), a.mutable_data());
        return a;
    });
    m.def(
        "make_initial_shear",
        [](const Grid& g, double A, int ramp_cells, double pert_amplitude, int k_min, int k_max,
           std::uint64_t seed) {
            PerturbationSpec pert;
            pert.amplitude = pert_amplitude;
            pert.k_min = k_min;
            pert.k_max = k_max;
            pert.seed = seed;
            InitialShear s = make_initial_shear(g, A, ramp_cells, pert);
            return py::make_tuple(s.field, s.dist_sq_to_shear);
        },
        py::arg("grid"), py::arg("A"), py::arg("ramp_cells"), py::arg("pert_amplitude") = 0.0,
        py::arg("k_min") = 2, py::arg("k_max") = 8, py::arg("seed") = 0);

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("nu", &SolverConfig::nu)
        .def_readwrite("cfl", &SolverConfig::cfl)
        .def_readwrite("t_end", &SolverConfig::t_end)
        .def_readwrite("output_stride", &SolverConfig::output_stride)
        .def_readwrite("dt_max", &SolverConfig::dt_max);

    py::class_<EnergyLedger>(m, "EnergyLedger")
        .def_property_readonly("t", [](const EnergyLedger& l) { return to_array(l.t); })
        .def_property_readonly("kinetic",
                               [](const EnergyLedger& l) { return to_array(l.kinetic); })
        .def_property_readonly(
            "dissipation_rate",
            [](const EnergyLedger& l) { return to_array(l.dissipation_rate); })
        .def_property_readonly("cumulative",
                               [](const EnergyLedger& l) { return to_array(l.cumulative); });

    py::class_<BoundaryVorticityTrace>(m, "BoundaryVorticityTrace")
        .def_property_readonly("times",
                               [](const BoundaryVorticityTrace& t) { return to_array(t.times); })
        .def_readonly("nx", &BoundaryVorticityTrace::nx)
        .def_readonly("period", &BoundaryVorticityTrace::period)
        .def("rows", [](const BoundaryVorticityTrace& t, Wall w) {
            const std::vector<double>& rows = (w == Wall::bottom) ? t.bottom : t.top;
            py::array_t<double> a({static_cast<py::ssize_t>(t.times.size()),
                                   static_cast<py::ssize_t>(t.nx)});
            std::copy(rows.begin(), rows.end(), a.mutable_data());
            return a;
        });

    py::class_<SeparationSeries>(m, "SeparationSeries")
        .def_property_readonly("t", [](const SeparationSeries& s) { return to_array(s.t); })
        .def_property_readonly("sep_sq",
                               [](const SeparationSeries& s) { return to_array(s.sep_sq); })
        .def_property_readonly(
            "cum_dissipation",
            [](const SeparationSeries& s) { return to_array(s.cum_dissipation); })
        .def_property_readonly(
            "wall_int_bottom",
            [](const SeparationSeries& s) { return to_array(s.wall_int_bottom); })
        .def_property_readonly("wall_int_top", [](const SeparationSeries& s) {
            return to_array(s.wall_int_top);
        });

    py::class_<RunResult>(m, "RunResult")
        .def_readonly("ledger", &RunResult::ledger)
        .def_readonly("trace", &RunResult::trace)
        .def_readonly("separation", &RunResult::separation)
        .def_readonly("steps", &RunResult::steps);

    py::class_<ChannelSolver>(m, "ChannelSolver")
        .def(py::init<const Grid&, const SolverConfig&>())
        .def("set_state", &ChannelSolver::set_state, py::arg("field"), py::arg("t") = 0.0)
        .def("state", &ChannelSolver::state, py::return_value_policy::copy)
        .def("time", &ChannelSolver::time)
        .def("step", &ChannelSolver::step,
             py::arg("dt_cap") = std::numeric_limits<double>::infinity())
        .def("project", &ChannelSolver::project)
        .def(
            "run",
            [](ChannelSolver& s, double comparison_A, double sample_dt) {
                RecordingConfig rec;
                rec.comparison = uniform_shear(s.grid(), comparison_A);
                rec.sample_dt = sample_dt;
                return s.run(rec);
            },
            py::arg("comparison_A") = 0.0, py::arg("sample_dt") = 0.0);

    m.def("time_mollify", [](std::vector<double> times, std::vector<double> values,
                             double window) {
        return py::make_tuple(to_array(time_mollify_times(times, window)),
                              to_array(time_mollify(times, values, window)));
    });

    // shear-layer oracle
    py::class_<prandtl::ShearProfile>(m, "ShearProfile")
        .def_property_readonly(
            "coeffs", [](const prandtl::ShearProfile& p) { return to_array(p.coeffs); })
        .def_readonly("H", &prandtl::ShearProfile::H)
        .def_readonly("nu", &prandtl::ShearProfile::nu)
        .def("initial_l2", &prandtl::ShearProfile::initial_l2)
        .def("value", &prandtl::ShearProfile::value)
        .def("gradient", &prandtl::ShearProfile::gradient)
        .def("max_gradient", &prandtl::ShearProfile::max_gradient, py::arg("t"),
             py::arg("samples") = 4096);
    m.def("sine_coefficients",
          [](std::vector<double> samples, double H, double nu, int modes) {
              return prandtl::sine_coefficients(samples, H, nu, modes);
          });
    m.def("constant_profile", &prandtl::constant_profile, py::arg("A"), py::arg("H"),
          py::arg("nu"), py::arg("modes") = 10000);
    m.def("lipschitz_decay_check", [](const prandtl::ShearProfile& p, double t) {
        const prandtl::DecayCheck c = prandtl::lipschitz_decay_check(p, t);
        return py::make_tuple(c.lhs, c.rhs);
    });
    m.def("series_bound_check", [](double z) {
        const prandtl::SeriesBound s = prandtl::series_bound_check(z);
        return py::make_tuple(s.sum, s.bound);
    });
    m.def("prandtl_horizon", [](double E, double boundary, double nu, double T) {
        const prandtl::Horizon h = prandtl::prandtl_horizon(E, boundary, nu, T);
        py::dict d;
        d["t_star"] = h.t_star;
        d["t_snapped"] = h.t_snapped;
        d["k"] = h.k;
        d["degenerate"] = h.degenerate;
        return d;
    });

    // decomposition machinery
    py::class_<SampledDensity>(m, "SampledDensity")
        .def(py::init(&density_from_array), py::arg("values"), py::arg("T"), py::arg("W"),
             py::arg("H"))
        .def("total_integral", &SampledDensity::total_integral)
        .def("box_average", [](const SampledDensity& d, double t0, double t1, double x0,
                               double x1, double y0, double y1, bool wrap_x) {
            return d.box_average({t0, t1, x0, x1, y0, y1}, wrap_x);
        });
    m.def("rescale_density", &rescale_density);
    m.def("rescale_trace", &rescale_trace);

    py::class_<InitialSelection>(m, "InitialSelection")
        .def_property_readonly("cubes", [](const InitialSelection& s) {
            py::list out;
            for (const ParabolicCube& c : s.cubes) out.append(cube_dict(c));
            return out;
        });
    m.def("initial_partition", &initial_partition, py::arg("L"), py::arg("W"), py::arg("H"),
          py::arg("depth_cap") = 8);

    py::class_<Decomposition>(m, "Decomposition")
        .def_readonly("L", &Decomposition::L)
        .def_readonly("W", &Decomposition::W)
        .def_readonly("H", &Decomposition::H)
        .def_readonly("c0", &Decomposition::c0)
        .def("footprint_total", &Decomposition::footprint_total)
        .def_property_readonly("cubes", [](const Decomposition& d) {
            py::list out;
            for (const ParabolicCube& c : d.cubes) out.append(cube_dict(c));
            return out;
        });
    m.def(
        "refine",
        [](const InitialSelection& sel, const SampledDensity& density, double c0,
           int max_generation, double min_cells) {
            RefineOptions opt;
            opt.max_generation = max_generation;
            opt.min_cells = min_cells;
            return refine(sel, density, c0, opt);
        },
        py::arg("selection"), py::arg("density"), py::arg("c0"), py::arg("max_generation") = 16,
        py::arg("min_cells") = 8.0);
    m.def("averaged_wall_vorticity",
          [](const Decomposition& d, const BoundaryVorticityTrace& tr) {
              return to_array(averaged_wall_vorticity(d, tr).values);
          });
    m.def("boundary_vorticity_statistic",
          [](const Decomposition& d, std::vector<double> values, double dissipation_total) {
              AveragedWallVorticity avg;
              avg.values = std::move(values);
              const BoundaryStatistic st = boundary_vorticity_statistic(d, avg, dissipation_total);
              py::dict out;
              out["lhs"] = st.lhs;
              out["rhs"] = st.rhs;
              out["ratio"] = st.ratio;
              out["above_count"] = st.above_count;
              out["above_measure"] = st.above_measure;
              return out;
          });

    m.def("weak_lorentz", [](std::vector<double> values, std::vector<double> measures, double p) {
        const LorentzReport rep = weak_lorentz(values, measures, p);
        py::dict out;
        out["value"] = rep.value;
        out["sigma_star"] = rep.sigma_star;
        py::list curve;
        for (const auto& row : rep.curve) curve.append(py::make_tuple(row[0], row[1], row[2]));
        out["curve"] = curve;
        return out;
    });
    m.def(
        "parabolic_maximal",
        [](const SampledDensity& f, double t, double x, double y, double r_max, int levels) {
            return parabolic_maximal(f, t, x, y, {r_max, levels});
        },
        py::arg("density"), py::arg("t"), py::arg("x"), py::arg("y"), py::arg("r_max") = 1.0,
        py::arg("levels") = 20);
    m.def(
        "weak11_fit",
        [](const SampledDensity& f, double r_max, int levels) {
            const Weak11Fit fit = weak11_fit(f, {r_max, levels});
            return py::make_tuple(fit.maximal_weak_norm, fit.l1_norm, fit.constant);
        },
        py::arg("density"), py::arg("r_max") = 1.0, py::arg("levels") = 12);

    // subsolution
    py::class_<ShearSubsolution>(m, "ShearSubsolution")
        .def(py::init<double, double>(), py::arg("lambda_"), py::arg("eps"))
        .def("horizon", &ShearSubsolution::horizon)
        .def("profile", &ShearSubsolution::profile)
        .def("flux", &ShearSubsolution::flux)
        .def("pressure", &ShearSubsolution::pressure)
        .def("energy_density", &ShearSubsolution::energy_density)
        .def("energy_integral", &ShearSubsolution::energy_integral)
        .def("energy_rate", &ShearSubsolution::energy_rate)
        .def("deviation_rate", &ShearSubsolution::deviation_rate)
        .def("constraint_eigenvalues", &ShearSubsolution::constraint_eigenvalues);
    m.def("subsolution_residual_check",
          [](const ShearSubsolution& s, int t_samples, int y_samples) {
              const ResidualReport r = residual_check(s, t_samples, y_samples);
              return py::make_tuple(r.max_transport_residual, r.min_eigenvalue);
          });
    m.def("subsolution_rescale_profile", [](const ShearSubsolution& s, double A, double t) {
        const RescaledSeparation r = rescale_profile(s, A, t);
        return py::make_tuple(r.separation, r.C);
    });

    // bound assembly
    m.def("fit_scaling", [](py::list samples) {
        std::vector<ScalingSample> ss;
        for (py::handle h : samples) {
            py::dict d = h.cast<py::dict>();
            ss.push_back({d["A"].cast<double>(), d["T"].cast<double>(), d["Re"].cast<double>(),
                          d["sep_sq"].cast<double>(), d["dist0_sq"].cast<double>()});
        }
        const ScalingFit fit = fit_scaling(ss);
        py::dict out;
        out["defined"] = fit.defined;
        out["exp_A"] = fit.exp_A;
        out["exp_T"] = fit.exp_T;
        out["C"] = fit.C;
        return out;
    });
}
