#include "layersep/experiment.hpp"

#include <fstream>
#include <future>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "layersep/field_io.hpp"
#include "layersep/rescale.hpp"

namespace layersep {

using nlohmann::json;

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    json j = json::parse(json_text);
    if (j.value("schema", "") != "layersep-experiment-v1")
        throw InvalidConfigError("config: expected schema layersep-experiment-v1");
    ExperimentConfig c;
    const json& geom = j.at("geometry");
    c.W = geom.at("W").get<double>();
    c.H = geom.at("H").get<double>();
    c.d = geom.value("d", 2);
    if (c.d == 3)
        throw InvalidConfigError(
            "config: d = 3 fields are parsed but not runnable; this solver integrates d = 2 only");
    if (c.d != 2) throw InvalidConfigError("config: dimension must be 2");

    const json& shear = j.at("shear");
    if (shear.contains("A_list"))
        c.A_list = shear.at("A_list").get<std::vector<double>>();
    else
        c.A_list = {shear.value("A", 1.0)};
    c.ramp_cells = shear.value("ramp_cells", 8);
    c.ramp_fraction = shear.value("ramp_fraction", 0.0);

    const json& solver = j.at("solver");
    if (solver.contains("nu_list"))
        c.nu_list = solver.at("nu_list").get<std::vector<double>>();
    else
        c.nu_list = {solver.value("nu", 1e-2)};
    c.t_end = solver.value("t_end", 1.0);
    c.cfl = solver.value("cfl", 0.4);
    c.dt_max = solver.value("dt_max", 0.0);
    c.output_stride = solver.value("output_stride", 1);

    c.resolutions.clear();
    for (const json& r : j.at("resolutions"))
        c.resolutions.emplace_back(r.at(0).get<int>(), r.at(1).get<int>());
    if (c.resolutions.empty()) throw InvalidConfigError("config: resolutions must be nonempty");

    if (j.contains("perturbation")) {
        const json& p = j.at("perturbation");
        c.pert_amplitude = p.value("amplitude", 0.0);
        c.pert_k_min = p.value("k_min", 2);
        c.pert_k_max = p.value("k_max", 8);
        c.seed = p.value("seed", std::uint64_t{0});
    }
    if (j.contains("recording")) {
        const json& rec = j.at("recording");
        c.sample_dt = rec.value("sample_dt", 0.0);
        c.density_dt = rec.value("density_dt", 0.0);
        c.density_coarsen_x = rec.value("density_coarsen_x", 1);
        c.density_coarsen_y = rec.value("density_coarsen_y", 1);
        if (rec.contains("snapshot_times"))
            c.snapshot_times = rec.at("snapshot_times").get<std::vector<double>>();
    }
    if (j.contains("decomposition")) {
        const json& d = j.at("decomposition");
        c.c0 = d.value("c0", c.c0);
        c.depth_cap = d.value("depth_cap", c.depth_cap);
        c.max_generation = d.value("max_generation", c.max_generation);
        c.min_cells = d.value("min_cells", c.min_cells);
    }
    c.output_dir = j.value("output_dir", "out");
    c.seed = j.value("seed", c.seed);
    return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DependencyError("cannot open config file: " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_experiment_config(ss.str());
}

std::string experiment_config_json(const ExperimentConfig& c) {
    json j;
    j["schema"] = "layersep-experiment-v1";
    j["geometry"] = {{"W", c.W}, {"H", c.H}, {"d", c.d}};
    j["shear"] = {{"A_list", c.A_list},
                  {"ramp_cells", c.ramp_cells},
                  {"ramp_fraction", c.ramp_fraction}};
    j["solver"] = {{"nu_list", c.nu_list}, {"t_end", c.t_end},           {"cfl", c.cfl},
                   {"dt_max", c.dt_max},   {"output_stride", c.output_stride}};
    json res = json::array();
    for (auto [nx, ny] : c.resolutions) res.push_back({nx, ny});
    j["resolutions"] = res;
    j["perturbation"] = {{"amplitude", c.pert_amplitude},
                         {"k_min", c.pert_k_min},
                         {"k_max", c.pert_k_max},
                         {"seed", c.seed}};
    j["recording"] = {{"sample_dt", c.sample_dt},
                      {"density_dt", c.density_dt},
                      {"density_coarsen_x", c.density_coarsen_x},
                      {"density_coarsen_y", c.density_coarsen_y},
                      {"snapshot_times", c.snapshot_times}};
    j["decomposition"] = {{"c0", c.c0},
                          {"depth_cap", c.depth_cap},
                          {"max_generation", c.max_generation},
                          {"min_cells", c.min_cells}};
    j["output_dir"] = c.output_dir;
    j["seed"] = c.seed;
    return j.dump(2);
}

CaseSpec case_spec(const ExperimentConfig& cfg, int index) {
    const int n = cfg.case_count();
    if (index < 0 || index >= n) throw InvalidConfigError("case index out of range");
    CaseSpec s;
    s.index = index;
    const int nres = static_cast<int>(cfg.resolutions.size());
    const int nnu = static_cast<int>(cfg.nu_list.size());
    const int ires = index % nres;
    const int inu = (index / nres) % nnu;
    const int iA = index / (nres * nnu);
    s.A = cfg.A_list[iA];
    s.nu = cfg.nu_list[inu];
    s.nx = cfg.resolutions[ires].first;
    s.ny = cfg.resolutions[ires].second;
    s.seed = cfg.seed + 1000003ull * static_cast<std::uint64_t>(index);
    s.ramp_cells = cfg.ramp_fraction > 0.0
                       ? std::max(2, static_cast<int>(std::lround(cfg.ramp_fraction * s.ny)))
                       : cfg.ramp_cells;
    return s;
}

namespace {

void write_trace_csv(const std::filesystem::path& path, const BoundaryVorticityTrace& tr,
                     Wall wall) {
    std::ofstream out(path);
    out << "t";
    for (int i = 0; i < tr.nx; ++i) out << ",w" << i;
    out << "\n";
    const std::vector<double>& rows = (wall == Wall::bottom) ? tr.bottom : tr.top;
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
        out << format_double(tr.times[k]);
        for (int i = 0; i < tr.nx; ++i)
            out << ',' << format_double(rows[k * static_cast<std::size_t>(tr.nx) + i]);
        out << "\n";
    }
}

BoundaryVorticityTrace read_trace_csv(const std::filesystem::path& bottom_path,
                                      const std::filesystem::path& top_path, double period) {
    BoundaryVorticityTrace tr;
    tr.period = period;
    auto read_one = [&](const std::filesystem::path& p, std::vector<double>& rows, bool fill_times) {
        std::ifstream in(p);
        if (!in) throw DependencyError("missing trace file: " + p.string());
        std::string line;
        std::getline(in, line); // header
        int ncols = static_cast<int>(std::count(line.begin(), line.end(), ',')) + 1;
        tr.nx = ncols - 1;
        while (std::getline(in, line)) {
            std::stringstream ss(line);
            std::string cell;
            std::getline(ss, cell, ',');
            if (fill_times) tr.times.push_back(std::stod(cell));
            while (std::getline(ss, cell, ',')) rows.push_back(std::stod(cell));
        }
    };
    read_one(bottom_path, tr.bottom, true);
    read_one(top_path, tr.top, false);
    return tr;
}

} // namespace

void write_density(const std::filesystem::path& path, const SampledDensity& d) {
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(d.values().data()),
              static_cast<std::streamsize>(d.values().size() * sizeof(double)));
    json j;
    j["format"] = "layersep-density-v1";
    j["nt"] = d.nt();
    j["nx"] = d.nx();
    j["ny"] = d.ny();
    j["T"] = d.span_t();
    j["W"] = d.span_x();
    j["H"] = d.span_y();
    j["scale"] = d.scale();
    std::ofstream side(path.string() + ".json");
    side << j.dump(2) << "\n";
}

SampledDensity read_density(const std::filesystem::path& path) {
    std::ifstream side(path.string() + ".json");
    if (!side) throw DependencyError("missing density sidecar: " + path.string() + ".json");
    json j;
    side >> j;
    SampledDensity d(j.at("nt").get<int>(), j.at("nx").get<int>(), j.at("ny").get<int>(),
                     j.at("T").get<double>(), j.at("W").get<double>(), j.at("H").get<double>());
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DependencyError("missing density file: " + path.string());
    std::vector<double> buf(static_cast<std::size_t>(d.nt()) * d.nx() * d.ny());
    in.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(double)));
    if (!in) throw ShapeError("density file truncated");
    std::size_t m = 0;
    for (int k = 0; k < d.nt(); ++k)
        for (int j2 = 0; j2 < d.ny(); ++j2)
            for (int i = 0; i < d.nx(); ++i) d.at(k, i, j2) = buf[m++];
    return d;
}

CaseResult run_case(const ExperimentConfig& cfg, int index,
                    const std::filesystem::path& output_root) {
    const CaseSpec spec = case_spec(cfg, index);
    const ChannelGeometry geom(cfg.W, cfg.H);
    const Grid grid(geom, spec.nx, spec.ny);

    SolverConfig scfg;
    scfg.nu = spec.nu;
    scfg.cfl = cfg.cfl;
    scfg.t_end = cfg.t_end;
    scfg.output_stride = cfg.output_stride;
    if (cfg.dt_max > 0.0) scfg.dt_max = cfg.dt_max;

    PerturbationSpec pert;
    pert.amplitude = cfg.pert_amplitude * spec.A;
    pert.k_min = cfg.pert_k_min;
    pert.k_max = cfg.pert_k_max;
    pert.seed = spec.seed;
    const InitialShear init = make_initial_shear(grid, spec.A, spec.ramp_cells, pert);

    RecordingConfig rec;
    rec.comparison = uniform_shear(grid, spec.A);
    rec.sample_dt = cfg.sample_dt;
    rec.density_dt = cfg.density_dt;
    rec.density_coarsen_x = cfg.density_coarsen_x;
    rec.density_coarsen_y = cfg.density_coarsen_y;
    rec.snapshot_times = cfg.snapshot_times;

    ChannelSolver solver(grid, scfg);
    solver.set_state(init.field);

    CaseResult result;
    result.spec = spec;
    try {
        result.run = solver.run(rec);
    } catch (const BlowUpError& e) {
        throw BlowUpError("case " + std::to_string(index) + " (A=" + std::to_string(spec.A) +
                              ", nu=" + std::to_string(spec.nu) + ", " + std::to_string(spec.nx) +
                              "x" + std::to_string(spec.ny) + "): " + e.what(),
                          e.step_index);
    }
    const double E = spec.A * spec.A * geom.area(); // ||A e1||^2
    result.record = make_separation_record(result.run.separation, init.dist_sq_to_shear, spec.nu,
                                           spec.A, /*G=*/0.0, E, cfg.W, cfg.H);

    std::filesystem::path dir = output_root / ("case_" + std::to_string(index));
    std::filesystem::create_directories(dir);
    result.dir = dir;

    json manifest;
    manifest["schema"] = "layersep-case-v1";
    manifest["index"] = index;
    manifest["A"] = spec.A;
    manifest["nu"] = spec.nu;
    manifest["nx"] = spec.nx;
    manifest["ny"] = spec.ny;
    manifest["W"] = cfg.W;
    manifest["H"] = cfg.H;
    manifest["t_end"] = cfg.t_end;
    manifest["seed"] = spec.seed;
    manifest["ramp_cells"] = spec.ramp_cells;
    manifest["pert_amplitude"] = cfg.pert_amplitude;
    manifest["dist0_sq"] = init.dist_sq_to_shear;
    manifest["Re"] = spec.A * cfg.H / spec.nu;
    manifest["steps"] = result.run.steps;
    {
        std::ofstream out(dir / "manifest.json");
        out << manifest.dump(2) << "\n";
    }

    write_csv(dir / "energy.csv", {"t", "kinetic", "dissipation_rate", "cumulative_dissipation"},
              {result.run.ledger.t, result.run.ledger.kinetic, result.run.ledger.dissipation_rate,
               result.run.ledger.cumulative});
    write_csv(dir / "separation.csv",
              {"t", "sep_sq", "kinetic", "cum_dissipation", "wall_int_bottom", "wall_int_top"},
              {result.run.separation.t, result.run.separation.sep_sq, result.run.separation.kinetic,
               result.run.separation.cum_dissipation, result.run.separation.wall_int_bottom,
               result.run.separation.wall_int_top});
    write_trace_csv(dir / "trace_bottom.csv", result.run.trace, Wall::bottom);
    write_trace_csv(dir / "trace_top.csv", result.run.trace, Wall::top);
    if (result.run.density) write_density(dir / "density.bin", *result.run.density);
    write_velocity(dir / "u_final.bin", grid, solver.state());
    for (std::size_t k = 0; k < result.run.snapshots.size(); ++k)
        write_velocity(dir / ("u_snap_" + std::to_string(k) + ".bin"), grid,
                       result.run.snapshots[k].second);
    return result;
}

std::vector<CaseResult> run_sweep(const ExperimentConfig& cfg,
                                  const std::filesystem::path& output_root, int jobs) {
    const int n = cfg.case_count();
    std::vector<CaseResult> results(n);
    if (jobs <= 1) {
        for (int i = 0; i < n; ++i) results[i] = run_case(cfg, i, output_root);
        return results;
    }
    std::vector<std::future<CaseResult>> futures;
    futures.reserve(n);
    // Bounded fan-out: launch at most `jobs` cases at a time.
    int next = 0;
    while (next < n || !futures.empty()) {
        while (next < n && static_cast<int>(futures.size()) < jobs) {
            futures.push_back(std::async(std::launch::async, run_case, std::cref(cfg), next,
                                         output_root));
            ++next;
        }
        const int idx = next - static_cast<int>(futures.size());
        results[idx] = futures.front().get();
        futures.erase(futures.begin());
    }
    return results;
}

StoredCase load_case(const std::filesystem::path& case_dir, bool with_density) {
    StoredCase c;
    std::ifstream in(case_dir / "manifest.json");
    if (!in) throw DependencyError("missing manifest: " + (case_dir / "manifest.json").string());
    json manifest;
    in >> manifest;
    c.spec.index = manifest.value("index", 0);
    c.spec.A = manifest.at("A").get<double>();
    c.spec.nu = manifest.at("nu").get<double>();
    c.spec.nx = manifest.at("nx").get<int>();
    c.spec.ny = manifest.at("ny").get<int>();
    c.W = manifest.at("W").get<double>();
    c.H = manifest.at("H").get<double>();
    c.t_end = manifest.at("t_end").get<double>();
    c.dist0_sq = manifest.at("dist0_sq").get<double>();

    // separation.csv -> record
    std::ifstream sep(case_dir / "separation.csv");
    if (!sep) throw DependencyError("missing separation.csv in " + case_dir.string());
    std::string line;
    std::getline(sep, line);
    SeparationSeries series;
    while (std::getline(sep, line)) {
        std::stringstream ss(line);
        std::string cell;
        double vals[6];
        for (double& v : vals) {
            if (!std::getline(ss, cell, ',')) throw ShapeError("separation.csv: short row");
            v = std::stod(cell);
        }
        series.t.push_back(vals[0]);
        series.sep_sq.push_back(vals[1]);
        series.kinetic.push_back(vals[2]);
        series.cum_dissipation.push_back(vals[3]);
        series.wall_int_bottom.push_back(vals[4]);
        series.wall_int_top.push_back(vals[5]);
    }
    const double E = c.spec.A * c.spec.A * c.W * c.H;
    c.record = make_separation_record(series, c.dist0_sq, c.spec.nu, c.spec.A, 0.0, E, c.W, c.H);
    c.trace = read_trace_csv(case_dir / "trace_bottom.csv", case_dir / "trace_top.csv", c.W);
    if (with_density && std::filesystem::exists(case_dir / "density.bin")) {
        c.density = read_density(case_dir / "density.bin");
        c.has_density = true;
    }
    return c;
}

DecompositionResult decompose_case(const StoredCase& c, double c0, int depth_cap,
                                   int max_generation, double min_cells) {
    if (!c.has_density)
        throw DependencyError("decompose_case: run was recorded without a dissipation density");
    DecompositionResult out;
    const SampledDensity resc = rescale_density(c.density, c.spec.nu);
    const BoundaryVorticityTrace rtrace = rescale_trace(c.trace, c.spec.nu);
    const InitialSelection sel =
        initial_partition(c.t_end / c.spec.nu, c.W / c.spec.nu, c.H / c.spec.nu, depth_cap);
    RefineOptions opt;
    opt.max_generation = max_generation;
    opt.min_cells = min_cells;
    out.decomp = refine(sel, resc, c0, opt);
    out.avg = averaged_wall_vorticity(out.decomp, rtrace);
    out.statistic = boundary_vorticity_statistic(out.decomp, out.avg, resc.total_integral());
    return out;
}

void write_decomposition_json(const std::filesystem::path& path, const DecompositionResult& d) {
    json j;
    j["schema"] = "layersep-decomposition-v1";
    j["L"] = d.decomp.L;
    j["W"] = d.decomp.W;
    j["H"] = d.decomp.H;
    j["c0"] = d.decomp.c0;
    j["scales"] = {{"R0", d.decomp.scales.R0}, {"L0", d.decomp.scales.L0},
                   {"W0", d.decomp.scales.W0}, {"H0", d.decomp.scales.H0},
                   {"kL", d.decomp.scales.kL}, {"kW", d.decomp.scales.kW},
                   {"kH", d.decomp.scales.kH}};
    j["statistic"] = {{"lhs", d.statistic.lhs},
                      {"rhs", d.statistic.rhs},
                      {"ratio", d.statistic.ratio},
                      {"above_count", d.statistic.above_count},
                      {"above_measure", d.statistic.above_measure}};
    json cubes = json::array();
    for (std::size_t k = 0; k < d.decomp.cubes.size(); ++k) {
        const ParabolicCube& c = d.decomp.cubes[k];
        json jc;
        jc["gen"] = c.gen;
        jc["wall"] = c.wall == Wall::bottom ? "bottom" : "top";
        jc["s"] = c.s;
        jc["t"] = c.t;
        jc["xc"] = c.xc;
        jc["w"] = c.w;
        jc["h"] = c.h;
        jc["r"] = c.r;
        jc["clipped"] = c.clipped;
        jc["avg_dissipation"] = c.suit_avg;
        if (std::isfinite(c.parent_avg)) jc["parent_avg"] = c.parent_avg;
        jc["omega_avg"] = d.avg.values[k];
        cubes.push_back(jc);
    }
    j["cubes"] = cubes;
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

void write_lorentz_csv(const std::filesystem::path& path, const LorentzReport& rep) {
    std::vector<double> sigma, measure, value;
    for (const auto& row : rep.curve) {
        sigma.push_back(row[0]);
        measure.push_back(row[1]);
        value.push_back(row[2]);
    }
    write_csv(path, {"sigma", "measure", "value"}, {sigma, measure, value});
}

} // namespace layersep
