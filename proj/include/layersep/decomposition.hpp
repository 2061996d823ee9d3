#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "layersep/density.hpp"
#include "layersep/geometry.hpp"
#include "layersep/lorentz.hpp"
#include "layersep/solver.hpp"

namespace layersep {

/// Base scales of the parabolic dyadic grid over (0, L) x channel(W, H):
/// R0 = min(sqrt(L), W/2, H/2) and nonnegative integers with
/// L = 4^kL L0, W = 2 2^kW W0, H = 2 2^kH H0, R0 <= sqrt(L0), W0, H0 <= 2 R0.
struct ParabolicScales {
    double R0, L0, W0, H0;
    int kL, kW, kH;
};

ParabolicScales initial_scales(double L, double W, double H);

/// A wall-attached parabolic cube of generation `gen`: time interval (s, t)
/// of length l = 4^-gen L0, wall footprint of width w = 2^-gen W0 centered at
/// xc, interior height h = 2^-gen H0 and scale r = 2^-gen R0, so that
/// r <= sqrt(l), w, h <= 2r. The enlarged box doubles every extent toward
/// the past and the interior.
struct ParabolicCube {
    int gen = 0;
    Wall wall = Wall::bottom;
    double s = 0.0, t = 0.0;
    double xc = 0.0;
    double w = 0.0, h = 0.0, r = 0.0;
    bool clipped = false;     // enlarged box clipped at t = 0
    double suit_avg = 0.0;    // measured enlarged-box average when accepted
    double parent_avg = std::numeric_limits<double>::quiet_NaN(); // witness

    double length() const { return t - s; }
    double footprint_measure() const { return length() * w; }
    double volume() const { return length() * w * h; }
};

/// Enlarged box of a cube inside the channel (y measured from the cube's
/// wall), optionally clipped to (0, L) in time.
Box enlarged_box(const ParabolicCube& c, double L, double H, bool* clipped = nullptr);

/// Graded initial selection: generation-k cubes in the time band
/// (4^-k L0, 4^(1-k) L0) for k = 1..depth_cap, generation-0 cubes for
/// t >= L0. The deepest band is extended down to t = 0 so the cubes tile
/// (0, L) x walls exactly; cubes touching t = 0 get their enlarged boxes
/// clipped and are flagged.
struct InitialSelection {
    ParabolicScales scales;
    double L, W, H;
    int depth_cap;
    std::vector<ParabolicCube> cubes;
};

InitialSelection initial_partition(double L, double W, double H, int depth_cap = 8);

/// Refinement stopping test: enlarged-box average of the dissipation
/// density <= c0 r^-4.
bool is_suitable(const ParabolicCube& c, const DensityView& density, double c0, double L, double H,
                 double min_cells, double* avg_out = nullptr);

class UnresolvedCubeError : public ResolutionError {
public:
    UnresolvedCubeError(const std::string& what, std::vector<ParabolicCube> offenders)
        : ResolutionError(what), offenders_(std::move(offenders)) {}
    const std::vector<ParabolicCube>& offenders() const { return offenders_; }

private:
    std::vector<ParabolicCube> offenders_;
};

/// Final decomposition: every cube suitable, every non-initial cube's parent
/// unsuitable (witness average recorded), footprints tiling (0, L) x walls.
struct Decomposition {
    ParabolicScales scales;
    double L, W, H;
    double c0;
    std::vector<ParabolicCube> cubes;

    double footprint_total() const {
        double s = 0.0;
        for (const ParabolicCube& c : cubes) s += c.footprint_measure();
        return s;
    }
};

/// Options for refine; min_cells is the per-axis sampling floor below which
/// a suitability check refuses to run.
struct RefineOptions {
    int max_generation = 16;
    double min_cells = 8.0;
};

Decomposition refine(const InitialSelection& sel, const DensityView& density, double c0,
                     const RefineOptions& opt = {});

/// Piecewise-constant averaged wall vorticity: per cube, the time average of
/// the trace inside the cube's interval at each wall sample (trapezoid rule),
/// absolute value, then the mean over the footprint samples. Requires at
/// least 4 trace samples inside each cube's time interval and at least one
/// wall sample inside its footprint.
struct AveragedWallVorticity {
    std::vector<double> values; // aligned with Decomposition::cubes

    /// Lookup of the piecewise-constant function at (t, x) on a wall.
    double at(const Decomposition& d, Wall wall, double t, double x) const;
};

AveragedWallVorticity averaged_wall_vorticity(const Decomposition& d,
                                              const BoundaryVorticityTrace& trace);

/// Weak-L^{3/2} statistic of the averaged vorticity above the threshold
/// max(1/s, 1/W^2, 1/H^2) (cube left endpoint, the conservative choice),
/// to the power 3/2, against the total dissipation.
struct BoundaryStatistic {
    double lhs = 0.0;          // thresholded weak norm to the 3/2
    double rhs = 0.0;          // ||grad u||^2 over the space-time domain
    double ratio = 0.0;        // empirical constant
    double above_measure = 0.0;
    int above_count = 0;
    LorentzReport report;
};

BoundaryStatistic boundary_vorticity_statistic(const Decomposition& d,
                                               const AveragedWallVorticity& avg,
                                               double dissipation_total);

/// Unit-scale local check at a wall point of a unit-viscosity run: the
/// time-integrated absolute vorticity over a unit window and unit box,
/// against the local dissipation budget over the doubled neighborhood.
struct LocalVorticityCheck {
    double lhs;      // int_{|x - x0| < 1} |int_{t0-1}^{t0} w dt| dx'
    double c0_local; // int over (t0-4,t0) x (x0 +- 2) x (0,2) of |grad u|^2
};

LocalVorticityCheck local_vorticity_check(const BoundaryVorticityTrace& trace,
                                          const DensityView& density, Wall wall, double t0,
                                          double x0);

} // namespace layersep
