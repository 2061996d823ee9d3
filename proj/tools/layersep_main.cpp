// Command line driver: runs channel sweeps, builds wall decompositions,
// assembles layer-separation bounds, and evaluates the closed-form
// subsolution and shear-layer checks.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "layersep/experiment.hpp"
#include "layersep/field_io.hpp"
#include "layersep/prandtl.hpp"
#include "layersep/subsolution.hpp"

namespace fs = std::filesystem;
using namespace layersep;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitBlowUp = 3;

fs::path output_root(const std::string& flag_value, const ExperimentConfig& cfg) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("LAYERSEP_OUT")) return fs::path(env) / cfg.output_dir;
    return cfg.output_dir;
}

std::vector<fs::path> sweep_case_dirs(const fs::path& root) {
    std::vector<fs::path> dirs;
    for (int i = 0;; ++i) {
        const fs::path d = root / ("case_" + std::to_string(i));
        if (!fs::exists(d / "manifest.json")) break;
        dirs.push_back(d);
    }
    if (dirs.empty()) throw DependencyError("no case directories under " + root.string());
    return dirs;
}

int cmd_run(const std::string& config_path, const std::string& out_flag, long seed_override,
            int jobs) {
    ExperimentConfig cfg = load_experiment_config(config_path);
    if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
    const fs::path root = output_root(out_flag, cfg);
    fs::create_directories(root);
    {
        std::ofstream out(root / "config.json");
        out << experiment_config_json(cfg) << "\n";
    }
    const std::vector<CaseResult> results = run_sweep(cfg, root, jobs);
    for (const CaseResult& r : results) {
        std::cout << "case " << r.spec.index << ": A=" << r.spec.A << " nu=" << r.spec.nu << " "
                  << r.spec.nx << "x" << r.spec.ny << " steps=" << r.run.steps
                  << " sep(T)=" << format_double(r.record.sep_sq.back()) << "\n";
    }
    std::cout << "run: " << results.size() << " case(s) -> " << root.string() << "\n";
    return kExitOk;
}

int cmd_decompose(const std::string& case_dir, double c0, int depth_cap, int max_gen,
                  double min_cells) {
    const StoredCase c = load_case(case_dir);
    const DecompositionResult d = decompose_case(c, c0, depth_cap, max_gen, min_cells);
    write_decomposition_json(fs::path(case_dir) / "decomposition.json", d);
    write_lorentz_csv(fs::path(case_dir) / "lorentz.csv", d.statistic.report);
    std::cout << "decompose: " << d.decomp.cubes.size() << " cubes, statistic ratio "
              << format_double(d.statistic.ratio) << " -> " << case_dir << "\n";
    return kExitOk;
}

json bound_report_json(const StoredCase& c, const CombinedBound& cb, const MainBound& mb,
                       double t_nu, bool degenerate) {
    json j;
    j["schema"] = "layersep-bound-report-v1";
    j["case_index"] = c.spec.index;
    j["A"] = c.spec.A;
    j["nu"] = c.spec.nu;
    j["Re"] = c.record.Re();
    j["t_nu"] = t_nu;
    j["t_nu_degenerate"] = degenerate;
    j["combined"] = {{"lhs", cb.lhs},
                     {"initial_term", cb.initial_term},
                     {"gronwall_term", cb.gronwall_term},
                     {"shear_diss_term", cb.shear_diss_term},
                     {"prandtl_term", cb.prandtl_term},
                     {"wall_term", cb.wall_term},
                     {"rhs", cb.rhs},
                     {"residual", cb.residual},
                     {"degenerate", cb.degenerate}};
    j["main"] = {{"lhs_sup", mb.lhs_sup},
                 {"exp_factor", mb.exp_factor},
                 {"initial_term", mb.initial_term},
                 {"shear_diss_term", mb.shear_diss_term},
                 {"log_term_raw", mb.log_term_raw},
                 {"energy_term", mb.energy_term},
                 {"a3t_term_raw", mb.a3t_term_raw},
                 {"aspect_factor", mb.aspect_factor},
                 {"fitted_C", mb.fitted_C},
                 {"rhs_at_fitted_C", mb.rhs_at_fitted_C},
                 {"holds_at_fitted_C", mb.lhs_sup <= mb.rhs_at_fitted_C * (1.0 + 1e-12)}};
    j["trivial_bound_constant"] = trivial_bound_constant(c.record);
    return j;
}

int cmd_bounds(const std::string& sweep_dir, const std::string& case_dir) {
    if (!case_dir.empty()) {
        const StoredCase c = load_case(case_dir, /*with_density=*/false);
        const prandtl::Horizon h =
            prandtl::prandtl_horizon(c.record.E, c.record.boundary(), c.spec.nu, c.t_end);
        const CombinedBound cb = assemble_combined_bound(c.record, h.t_snapped);
        const MainBound mb = assemble_main_bound(c.record);
        std::ofstream out(fs::path(case_dir) / "bound_report.json");
        out << bound_report_json(c, cb, mb, h.t_snapped, h.degenerate).dump(2) << "\n";
        std::cout << "bounds: case " << c.spec.index << " fitted C "
                  << format_double(mb.fitted_C) << "\n";
        return kExitOk;
    }
    const std::vector<fs::path> dirs = sweep_case_dirs(sweep_dir);
    json all = json::array();
    std::vector<ScalingSample> samples;
    double worst_C = 0.0;
    for (const fs::path& d : dirs) {
        const StoredCase c = load_case(d, /*with_density=*/false);
        const prandtl::Horizon h =
            prandtl::prandtl_horizon(c.record.E, c.record.boundary(), c.spec.nu, c.t_end);
        const CombinedBound cb = assemble_combined_bound(c.record, h.t_snapped);
        const MainBound mb = assemble_main_bound(c.record);
        worst_C = std::max(worst_C, mb.fitted_C);
        all.push_back(bound_report_json(c, cb, mb, h.t_snapped, h.degenerate));
        for (std::size_t k = 0; k < c.record.t.size(); ++k) {
            if (c.record.t[k] <= 0.1 * c.t_end) continue;
            samples.push_back({c.spec.A, c.record.t[k], c.record.Re(), c.record.sep_sq[k],
                               c.record.dist0_sq});
        }
    }
    const ScalingFit fit = fit_scaling(samples);
    json j;
    j["schema"] = "layersep-sweep-bounds-v1";
    j["cases"] = all;
    j["scaling_fit"] = {{"defined", fit.defined},
                        {"exp_A", fit.exp_A},
                        {"exp_T", fit.exp_T},
                        {"C", fit.C}};
    j["fitted_C_max"] = worst_C;
    std::ofstream out(fs::path(sweep_dir) / "bounds.json");
    out << j.dump(2) << "\n";
    std::cout << "bounds: " << dirs.size() << " case(s), scaling exponents ("
              << format_double(fit.exp_A) << ", " << format_double(fit.exp_T) << "), C "
              << format_double(fit.C) << "\n";
    return kExitOk;
}

int cmd_subsolution(double lambda, double eps, double A, const std::string& out_dir) {
    const ShearSubsolution s(lambda, eps);
    const ResidualReport res = residual_check(s, 32, 512);
    const RateReport rates = rate_report(s, 0.5 * s.horizon());
    json j;
    j["schema"] = "layersep-subsolution-v1";
    j["lambda"] = lambda;
    j["eps"] = eps;
    j["A"] = A;
    j["horizon"] = s.horizon();
    j["energy_rate"] = s.energy_rate();
    j["deviation_rate"] = s.deviation_rate();
    j["separation_constant_C"] = 2.0 * s.deviation_rate();
    j["max_transport_residual"] = res.max_transport_residual;
    j["min_constraint_eigenvalue"] = res.min_eigenvalue;
    j["energy_rate_quadrature"] = rates.energy_rate_quadrature;
    j["edge_flux"] = rates.edge_flux;
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        std::ofstream out(fs::path(out_dir) / "subsolution.json");
        out << j.dump(2) << "\n";
        // energy and separation curves
        std::vector<double> ts, energy, sep;
        const double Tmax = 0.98 * s.horizon() / A;
        for (int k = 1; k <= 128; ++k) {
            const double t = Tmax * k / 128.0;
            ts.push_back(t);
            energy.push_back(s.energy_integral(A * t));
            sep.push_back(rescale_profile(s, A, t).separation);
        }
        write_csv(fs::path(out_dir) / "subsolution_curves.csv", {"t", "energy", "separation"},
                  {ts, energy, sep});
    }
    std::cout << "subsolution: lambda=" << lambda << " eps=" << eps << " r="
              << format_double(s.energy_rate()) << " deviation="
              << format_double(s.deviation_rate()) << " C=" << format_double(2.0 * s.deviation_rate())
              << "\n";
    return kExitOk;
}

int cmd_prandtl_check(double nu, double H, const std::string& out_dir) {
    // Lemma-style sweeps: series bound on a log grid, decay bound for the
    // constant shear profile, written as plot-ready curves.
    int violations = 0;
    std::vector<double> zs, sums, bounds;
    for (int k = 0; k < 61; ++k) {
        const double z = std::pow(10.0, -3.0 + 6.0 * k / 60.0);
        const prandtl::SeriesBound sb = prandtl::series_bound_check(z);
        zs.push_back(z);
        sums.push_back(sb.sum);
        bounds.push_back(sb.bound);
        if (!(sb.sum < sb.bound)) ++violations;
    }
    const prandtl::ShearProfile p = prandtl::constant_profile(1.0, H, nu, 10000);
    std::vector<double> ts, lhs, rhs;
    for (int k = 0; k < 40; ++k) {
        const double t = std::pow(10.0, -6.0 + 6.0 * k / 39.0) * H * H / nu;
        const prandtl::DecayCheck c = prandtl::lipschitz_decay_check(p, t);
        ts.push_back(t);
        lhs.push_back(c.lhs);
        rhs.push_back(c.rhs);
        if (c.lhs > c.rhs) ++violations;
    }
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_csv(fs::path(out_dir) / "series_bound.csv", {"z", "sum", "bound"}, {zs, sums, bounds});
        write_csv(fs::path(out_dir) / "decay_bound.csv", {"t", "grad_sup", "bound"},
                  {ts, lhs, rhs});
    }
    std::cout << "prandtl-check: " << (violations == 0 ? "all bounds hold" : "VIOLATIONS")
              << " (61 series points, 40 decay points)\n";
    return violations == 0 ? kExitOk : kExitValidation;
}

int cmd_report(const std::string& sweep_dir) {
    const std::vector<fs::path> dirs = sweep_case_dirs(sweep_dir);
    const fs::path out = fs::path(sweep_dir) / "report";
    fs::create_directories(out);
    for (const fs::path& d : dirs) {
        const StoredCase c = load_case(d, /*with_density=*/false);
        const std::string tag = "case" + std::to_string(c.spec.index);
        {
            std::ofstream f(out / (tag + "_separation.dat"));
            for (std::size_t k = 0; k < c.record.t.size(); ++k)
                f << format_double(c.record.t[k]) << " " << format_double(c.record.sep_sq[k])
                  << "\n";
        }
        {
            std::ofstream f(out / (tag + "_dissipation.dat"));
            for (std::size_t k = 0; k < c.record.t.size(); ++k)
                f << format_double(c.record.t[k]) << " "
                  << format_double(c.record.cum_dissipation[k]) << "\n";
        }
        if (fs::exists(d / "lorentz.csv")) {
            std::ifstream in(d / "lorentz.csv");
            std::ofstream f(out / (tag + "_lorentz.dat"));
            std::string line;
            std::getline(in, line);
            while (std::getline(in, line)) {
                const auto c1 = line.find(','), c2 = line.rfind(',');
                f << line.substr(0, c1) << " " << line.substr(c2 + 1) << "\n";
            }
        }
    }
    std::cout << "report: wrote gnuplot data for " << dirs.size() << " case(s) under "
              << out.string() << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"layer-separation laboratory for channel flow"};
    app.require_subcommand(1);

    std::string config_path, out_flag, case_dir, sweep_dir;
    long seed_override = -1;
    int jobs = 1;
    auto* run = app.add_subcommand("run", "integrate a sweep of channel flows");
    run->add_option("--config", config_path, "experiment config JSON")->required();
    run->add_option("--out", out_flag, "output root (overrides config/output_dir)");
    run->add_option("--seed", seed_override, "override the config RNG seed");
    run->add_option("--jobs", jobs, "concurrent cases");

    double c0 = 32.0, min_cells = 8.0;
    int depth_cap = 2, max_gen = 8;
    auto* dec = app.add_subcommand("decompose", "build the wall cube decomposition of a run");
    dec->add_option("--run", case_dir, "case directory (from `run`)")->required();
    dec->add_option("--c0", c0, "suitability constant");
    dec->add_option("--depth-cap", depth_cap, "initial grading depth");
    dec->add_option("--max-generation", max_gen, "refinement depth cap");
    dec->add_option("--min-cells", min_cells, "per-axis sampling floor");

    std::string bounds_case, bounds_sweep;
    auto* bnd = app.add_subcommand("bounds", "assemble separation bound terms");
    bnd->add_option("--run", bounds_case, "single case directory");
    bnd->add_option("--sweep", bounds_sweep, "sweep directory (fits scaling)");

    double lambda = 0.5, eps = 0.5, amplitude = 1.0;
    std::string sub_out;
    auto* sub = app.add_subcommand("subsolution", "evaluate the relaxed-Euler shear subsolution");
    sub->add_option("--lambda", lambda, "front speed in (0,1)");
    sub->add_option("--eps", eps, "energy slack in (0,1)");
    sub->add_option("--amplitude", amplitude, "shear amplitude A");
    sub->add_option("--out", sub_out, "optional output directory");

    double nu = 1e-2, height = 1.0;
    std::string pr_out;
    auto* pr = app.add_subcommand("prandtl-check", "shear-layer decay and series bounds");
    pr->add_option("--nu", nu, "viscosity");
    pr->add_option("--height", height, "channel height");
    pr->add_option("--out", pr_out, "optional output directory");

    auto* rep = app.add_subcommand("report", "emit gnuplot-ready two-column data");
    rep->add_option("--sweep", sweep_dir, "sweep directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (run->parsed()) return cmd_run(config_path, out_flag, seed_override, jobs);
        if (dec->parsed()) return cmd_decompose(case_dir, c0, depth_cap, max_gen, min_cells);
        if (bnd->parsed()) {
            if (bounds_case.empty() && bounds_sweep.empty())
                throw InvalidConfigError("bounds: need --run or --sweep");
            return cmd_bounds(bounds_sweep, bounds_case);
        }
        if (sub->parsed()) return cmd_subsolution(lambda, eps, amplitude, sub_out);
        if (pr->parsed()) return cmd_prandtl_check(nu, height, pr_out);
        if (rep->parsed()) return cmd_report(sweep_dir);
    } catch (const BlowUpError& e) {
        std::cerr << "blow-up at step " << e.step_index << ": " << e.what() << "\n";
        return kExitBlowUp;
    } catch (const InvalidConfigError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kExitValidation;
    } catch (const DependencyError& e) {
        std::cerr << "missing dependency: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ResolutionError& e) {
        std::cerr << "resolution error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitUsage;
}
