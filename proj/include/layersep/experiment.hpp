#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "layersep/bounds.hpp"
#include "layersep/decomposition.hpp"
#include "layersep/solver.hpp"

namespace layersep {

/// Sweep description: one config enumerates cases over the cross product
/// amplitudes x viscosities x resolutions. Parsed from versioned JSON
/// (schema "layersep-experiment-v1").
struct ExperimentConfig {
    double W = 1.0, H = 1.0;
    int d = 2;
    std::vector<double> A_list{1.0};
    std::vector<double> nu_list{1e-2};
    std::vector<std::pair<int, int>> resolutions{{256, 256}};
    int ramp_cells = 8;
    double ramp_fraction = 0.0; // > 0: ramp_cells = round(fraction * ny)
    double pert_amplitude = 0.0;
    int pert_k_min = 2, pert_k_max = 8;
    std::uint64_t seed = 0;
    double t_end = 1.0;
    double cfl = 0.4;
    double dt_max = 0.0; // 0: no cap
    int output_stride = 1;
    double sample_dt = 0.0;
    double density_dt = 0.0;
    int density_coarsen_x = 1, density_coarsen_y = 1;
    std::vector<double> snapshot_times;
    double c0 = 0.00390625; // 2^-8
    int depth_cap = 2;
    int max_generation = 8;
    double min_cells = 8.0;
    std::string output_dir = "out";

    int case_count() const {
        return static_cast<int>(A_list.size() * nu_list.size() * resolutions.size());
    }
};

ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
std::string experiment_config_json(const ExperimentConfig& cfg);

/// Concrete parameters of one case in the sweep.
struct CaseSpec {
    int index = 0;
    double A = 1.0;
    double nu = 1e-2;
    int nx = 256, ny = 256;
    std::uint64_t seed = 0;
    int ramp_cells = 8;
};
CaseSpec case_spec(const ExperimentConfig& cfg, int index);

struct CaseResult {
    CaseSpec spec;
    RunResult run;
    SeparationRecord record;
    std::filesystem::path dir;
};

/// Run one case and write its artifacts (manifest.json, energy.csv,
/// separation.csv, trace_*.csv, density.bin, u_final.bin) under
/// <output_root>/case_<index>/. Deterministic given the config and seed.
CaseResult run_case(const ExperimentConfig& cfg, int index,
                    const std::filesystem::path& output_root);

/// Run every case (optionally with worker threads; per-case artifacts are
/// independent, results are returned in case order).
std::vector<CaseResult> run_sweep(const ExperimentConfig& cfg,
                                  const std::filesystem::path& output_root, int jobs = 1);

/// Dissipation-density lattice IO (raw doubles plus a JSON sidecar).
void write_density(const std::filesystem::path& path, const SampledDensity& d);
SampledDensity read_density(const std::filesystem::path& path);

/// Stored run artifacts needed by the decompose/bounds stages.
struct StoredCase {
    CaseSpec spec;
    double W = 1.0, H = 1.0;
    double t_end = 1.0;
    double dist0_sq = 0.0;
    SeparationRecord record;
    BoundaryVorticityTrace trace;
    bool has_density = false;
    SampledDensity density;
};
StoredCase load_case(const std::filesystem::path& case_dir, bool with_density = true);

/// Decomposition artifacts for one stored case, computed in the rescaled
/// (unit viscosity) frame.
struct DecompositionResult {
    Decomposition decomp;
    AveragedWallVorticity avg;
    BoundaryStatistic statistic;
};
DecompositionResult decompose_case(const StoredCase& c, double c0, int depth_cap,
                                   int max_generation, double min_cells);

void write_decomposition_json(const std::filesystem::path& path, const DecompositionResult& d);
void write_lorentz_csv(const std::filesystem::path& path, const LorentzReport& rep);

} // namespace layersep
