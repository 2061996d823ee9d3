#pragma once

#include <span>
#include <vector>

#include "layersep/errors.hpp"

namespace layersep {
namespace prandtl {

/// Sine-series representation of a wall-to-wall shear profile on (0, H):
/// value(0, y) = sum_n b_n sin(n pi y / H). Evolving it under the 1D heat
/// equation with Dirichlet walls damps mode n by exp(-nu n^2 pi^2 t / H^2),
/// which is the exact x-independent solution of the channel Navier-Stokes
/// system (zero pressure).
struct ShearProfile {
    std::vector<double> coeffs; // b_1 .. b_N
    double H = 1.0;
    double nu = 1.0;

    int modes() const { return static_cast<int>(coeffs.size()); }

    /// L2 norm of the t = 0 profile from Parseval: ||v0||^2 = H/2 sum b_n^2.
    double initial_l2() const;

    /// Series value at time t >= 0, height y.
    double value(double t, double y) const;

    /// Term-wise derivative d/dy of the series.
    double gradient(double t, double y) const;

    /// sup_y |gradient(t, y)|, evaluated on a fine collocation grid plus the
    /// walls (the coefficient bound sum |b_n| n pi / H e^{-...} dominates the
    /// true sup; sampling keeps the reported value attainable).
    double max_gradient(double t, int samples = 4096) const;

    /// Whether gradient evaluations at this t are within the documented
    /// reliability window for truncated discontinuous data (t >= 1e-6 H^2/nu).
    bool gradient_reliable(double t) const { return t * nu >= 1e-6 * H * H; }
};

/// Discrete sine coefficients of samples taken at cell centers
/// y_j = (j + 1/2) H / n. Endpoint (wall) values are not sampled, so
/// profiles that are nonzero at the walls are representable in the
/// mean-square sense only. Throws InvalidConfigError when modes > n.
ShearProfile sine_coefficients(std::span<const double> samples, double H, double nu, int modes);

/// Closed-form coefficients of the discontinuous constant profile
/// value = A on (0, H): b_n = 4A/(n pi) for odd n.
ShearProfile constant_profile(double A, double H, double nu, int modes = 10000);

/// Both sides of the Lipschitz decay bound
///   ||grad v(t)||_inf <= 1/2 (nu t)^(-3/4) ||v0||_L2.
struct DecayCheck {
    double lhs;
    double rhs;
};
DecayCheck lipschitz_decay_check(const ShearProfile& p, double t);

/// sum_{n>=1} n^2 exp(-n^2 z) together with its upper bound z^{-3/2}.
/// The series is summed until the tail is below 1e-15 (absolute).
struct SeriesBound {
    double sum;
    double bound;
};
SeriesBound series_bound_check(double z);

/// Shear-comparison horizon (log2/4)^4 E^{-2} |dOmega|^2 nu^3 and its
/// dyadic snap 4^{-K} T constrained to [horizon/4, horizon]. When T is
/// already below horizon/4 no admissible K exists and the full span is
/// used with the degenerate flag set.
struct Horizon {
    double t_star;     // the closed-form horizon
    double t_snapped;  // 4^{-K} T in [t_star/4, t_star], or T when degenerate
    int k = 0;         // the exponent K used for the snap
    bool degenerate = false;
};
Horizon prandtl_horizon(double E, double boundary_measure, double nu, double T);

/// Closed-form check that the integrated decay bound over (0, t_snapped)
/// stays below log 2 (the budget used to fix the horizon):
/// lhs = int_0^{Tnu} (nu t)^{-3/4} dt * (E/|dOmega|)^{1/2} = 4 nu^{-3/4}
/// Tnu^{1/4} (E/|dOmega|)^{1/2}.
struct TimespanBudget {
    double lhs;
    double budget; // log 2
};
TimespanBudget timespan_budget(const Horizon& h, double E, double boundary_measure, double nu);

} // namespace prandtl
} // namespace layersep
