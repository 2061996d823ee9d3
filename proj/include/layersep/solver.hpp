#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "layersep/density.hpp"
#include "layersep/fields.hpp"
#include "layersep/geometry.hpp"
#include "layersep/spectral.hpp"

namespace layersep {

/// Time integration parameters.
struct SolverConfig {
    double nu = 1e-2;       // kinematic viscosity
    double cfl = 0.4;       // advective Courant number
    double t_end = 1.0;     // final time
    int output_stride = 1;  // steps between boundary trace samples
    double dt_max = std::numeric_limits<double>::infinity();

    void validate() const {
        if (!(nu > 0.0)) throw InvalidConfigError("SolverConfig: nu must be positive");
        if (!(cfl > 0.0 && cfl < 1.0)) throw InvalidConfigError("SolverConfig: cfl must be in (0,1)");
        if (!(t_end > 0.0)) throw InvalidConfigError("SolverConfig: t_end must be positive");
        if (output_stride < 1) throw InvalidConfigError("SolverConfig: output_stride must be >= 1");
    }
};

/// Per-step energy bookkeeping. `cumulative` integrates nu ||grad u||^2 with
/// the midpoint rule in time using the same Dirichlet form the implicit
/// diffusion dissipates, so the discrete energy inequality is checked
/// against the quantity the scheme actually removes.
struct EnergyLedger {
    std::vector<double> t;
    std::vector<double> kinetic;
    std::vector<double> dissipation_rate;
    std::vector<double> cumulative;
};

/// Wall vorticity samples over time; `bottom`/`top` are row-major
/// (sample, x-face) arrays of size times.size() x nx.
struct BoundaryVorticityTrace {
    std::vector<double> times;
    int nx = 0;
    double period = 1.0; // x extent, needed to place the samples
    std::vector<double> bottom;
    std::vector<double> top;

    const double* row(Wall w, std::size_t k) const {
        const std::vector<double>& d = (w == Wall::bottom) ? bottom : top;
        return d.data() + k * nx;
    }
};

/// Separation diagnostics against a fixed comparison shear.
struct SeparationSeries {
    std::vector<double> t;
    std::vector<double> sep_sq;          // ||u - ubar||^2
    std::vector<double> kinetic;
    std::vector<double> cum_dissipation; // nu int ||grad u||^2
    std::vector<double> wall_int_bottom; // int_0^t int nu w dx' ds at y=0
    std::vector<double> wall_int_top;
};

/// A comparison shear state: the field plus its wall velocities (which are
/// generally nonzero, unlike any admissible solver state).
struct ComparisonShear {
    VelocityField field;
    double u_bottom = 0.0;
    double u_top = 0.0;
};

/// ubar = A e1 everywhere.
ComparisonShear uniform_shear(const Grid& g, double A);

/// ubar = U(y) e1 from cell-center samples of U.
ComparisonShear profile_shear(const Grid& g, const std::vector<double>& U_cells,
                              double u_bottom, double u_top);

/// Divergence-free band-limited perturbation, supported away from the walls.
struct PerturbationSpec {
    double amplitude = 0.0; // max speed of the injected field
    int k_min = 2;
    int k_max = 8;
    std::uint64_t seed = 0;
};

/// Ramped shear initial data A s(y) e1 with s a quintic smoothstep from 0 to
/// 1 over ramp_cells cells at each wall, plus an optional perturbation.
struct InitialShear {
    VelocityField field;
    double dist_sq_to_shear; // ||u0 - A e1||^2 measured on the grid
};
InitialShear make_initial_shear(const Grid& g, double A, int ramp_cells,
                                const PerturbationSpec& pert = {});

/// What to record during a run.
struct RecordingConfig {
    std::optional<ComparisonShear> comparison; // enables SeparationSeries
    double sample_dt = 0.0;                    // separation cadence; 0 -> t_end/512
    double density_dt = 0.0;                   // dissipation lattice cadence; 0 -> off
    int density_coarsen_x = 1;
    int density_coarsen_y = 1;
    std::vector<double> snapshot_times;
    bool ledger_every_step = true;
};

struct RunResult {
    EnergyLedger ledger;
    BoundaryVorticityTrace trace;
    SeparationSeries separation;
    std::vector<std::pair<double, VelocityField>> snapshots;
    std::optional<SampledDensity> density; // |grad u|^2 samples
    long steps = 0;
};

/// Projection-method integrator for the channel: explicit two-stage
/// Runge-Kutta advection in divergence form, Crank-Nicolson diffusion
/// diagonalized by FFT in x with tridiagonal solves in y, and a pressure
/// projection solved the same way. dt is advection-limited; each stage ends
/// divergence-free to solver precision.
class ChannelSolver {
public:
    ChannelSolver(const Grid& g, const SolverConfig& cfg);

    void set_state(const VelocityField& u, double t = 0.0);
    const VelocityField& state() const { return u_; }
    double time() const { return t_; }
    long step_index() const { return steps_; }
    const Grid& grid() const { return grid_; }
    const SolverConfig& config() const { return cfg_; }

    /// One step with dt chosen by CFL, capped by dt_cap. Returns dt taken.
    double step(double dt_cap = std::numeric_limits<double>::infinity());

    /// Apply the pressure projection to the current state (idempotent up to
    /// solver precision).
    void project();

    /// Advance to cfg.t_end recording per the given config.
    RunResult run(const RecordingConfig& rec);

    /// nu ||grad u||^2 in the scheme's Dirichlet form.
    double dissipation_rate() const;

    /// int over a wall of nu * vorticity dx'.
    double wall_vorticity_integral(Wall w) const;

private:
    void advection(const VelocityField& f, std::vector<double>& nu_out,
                   std::vector<double>& nv_out) const;
    void check_finite() const;

    Grid grid_;
    SolverConfig cfg_;
    VelocityField u_;
    double t_ = 0.0;
    long steps_ = 0;
    double cum_diss_ = 0.0;
    double wall_int_bottom_ = 0.0;
    double wall_int_top_ = 0.0;
    std::unique_ptr<SpectralChannel> spectral_;
    // scratch
    std::vector<double> n1u_, n1v_, n2u_, n2v_, lapu_, lapv_;
    ScalarField div_, phi_;
};

/// Sliding-window time average over a sampled trace; exact for piecewise
/// linear interpolants (fractional end segments included). Defined for
/// t >= times.front() + window.
std::vector<double> time_mollify_times(const std::vector<double>& times, double window);
std::vector<double> time_mollify(const std::vector<double>& times,
                                 const std::vector<double>& values, double window);

/// Terms of the discrete energy identity for u against a comparison shear:
///   d/dt 1/2 ||u - ubar||^2 = -nu ||grad u||^2 [+ shear corrections]
///                             - int_bdry J[ubar] (nu w) dx'.
struct EnergyIdentityTerms {
    double lhs_rate;
    double dissipation_term; // -nu ||grad u||^2 + corrections when grad ubar != 0
    double boundary_term;    // - sum walls J[ubar] nu int w dx'
    double residual;         // lhs - (dissipation + boundary)
};
EnergyIdentityTerms energy_identity_terms(const Grid& g, const ComparisonShear& ubar,
                                          const VelocityField& u_prev, const VelocityField& u_mid,
                                          const VelocityField& u_next, double t_prev, double t_next,
                                          double nu);

} // namespace layersep
