#pragma once

#include <array>

#include "layersep/errors.hpp"

namespace layersep {

/// Closed-form relaxed-Euler shear subsolution on the extended strip
/// y in [-1, 2] (channel at [0, 1]): a transported piecewise-linear front
/// carrying a horizontal momentum profile in [0, 1], the momentum flux that
/// balances it, the diagonal stress = profile^2/2, and an energy density
/// with slack controlled by eps. Valid for 0 <= t < 1/(2 lambda), where the
/// two fronts meet. Everything is evaluated analytically; no grids.
class ShearSubsolution {
public:
    ShearSubsolution(double lambda, double eps);

    double lambda() const { return lambda_; }
    double eps() const { return eps_; }
    double horizon() const { return 0.5 / lambda_; } // fronts collide here

    /// Momentum profile in [0, 1]: ramps of width lambda t at each edge,
    /// plateau at 1 between them; 0 outside [0, 1]. At t = 0 it is the sheet
    /// initial datum (1 on [0, 1]).
    double profile(double t, double y) const;
    double profile_dt(double t, double y) const; // analytic partials off kinks
    double profile_dy(double t, double y) const;

    /// Momentum flux: -(lambda/2)(1 - profile^2) for y <= 1/2, positive
    /// branch above; continuous across 1/2 while the plateau covers it.
    double flux(double t, double y) const;
    double flux_dy(double t, double y) const;

    /// Diagonal stress entry (also the relaxed pressure): profile^2 / 2.
    double pressure(double t, double y) const;

    /// Energy density 1/2 - (eps/2)(1 - lambda)(1 - profile^2).
    double energy_density(double t, double y) const;

    /// Eigenvalues of the 2x2 admissibility matrix
    ///   [e - a^2 + p, g; g, e - p] with p = a^2/2:
    /// both equal e - a^2/2 -+ |g|; min is >= 0 everywhere and strictly
    /// positive where profile < 1 inside the channel.
    std::array<double, 2> constraint_eigenvalues(double t, double y) const;

    /// Strict positivity margin of the admissibility matrix where the
    /// profile is below 1: (1/2)(1 - a^2)(1 - lambda)(1 - eps).
    double admissibility_margin(double t, double y) const;

    /// Plateau length 1 - 2 lambda t (hits zero at the horizon).
    double plateau_length(double t) const;

    /// Energy integral over the channel: affine in t with slope -energy_rate.
    double energy_integral(double t) const;

    /// Linear energy decrease rate r = (2/3) eps lambda (1 - lambda).
    double energy_rate() const { return (2.0 / 3.0) * eps_ * lambda_ * (1.0 - lambda_); }

    /// Deviation growth rate lambda - r of 1/2 ||v(t) - v(0)||^2, assembled
    /// from the edge flux difference (= lambda) and the energy rate.
    double deviation_rate() const;

    /// 1/2 ||v(t) - v(0)||^2 = (lambda - r) t on (0, horizon).
    double deviation_profile(double t) const;

private:
    void check_time(double t) const;
    double lambda_, eps_;
};

/// Finite-difference residual sweep of the transport identity
/// d/dt profile + d/dy flux = 0 away from the kinks, plus the minimum
/// constraint eigenvalue over the sample grid.
struct ResidualReport {
    double max_transport_residual;
    double min_eigenvalue;
};
ResidualReport residual_check(const ShearSubsolution& s, int t_samples, int y_samples,
                              double kink_margin = 1e-4, double fd_step = 5e-7);

/// Quadrature cross-checks of the closed-form rates.
struct RateReport {
    double energy_rate_formula;
    double energy_rate_quadrature; // from differencing energy_integral
    double deviation_rate_formula;
    double edge_flux;              // flux(t,1) - flux(t,0) = lambda
    double front_mass_rate;        // d/dt int_0^1 profile dy = -lambda
};
RateReport rate_report(const ShearSubsolution& s, double t);

/// Amplitude-rescaled separation profile v*(t, x) = A v(A t, x):
/// 1/2 ||v*(t) - A e1||^2 = (lambda - r) A^3 t = (C/2) A^3 t with
/// C = 2 (lambda - r) in (0, 2). Valid for t < 1/(2 lambda A).
struct RescaledSeparation {
    double separation; // 1/2 ||v*(t) - A e1||^2
    double C;          // the constant on the ||.||^2 = C A^3 t convention
};
RescaledSeparation rescale_profile(const ShearSubsolution& s, double A, double t);

} // namespace layersep
