#include "layersep/subsolution.hpp"

#include <algorithm>
#include <cmath>

namespace layersep {

ShearSubsolution::ShearSubsolution(double lambda, double eps) : lambda_(lambda), eps_(eps) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw InvalidConfigError("ShearSubsolution: lambda must be in (0,1)");
    if (!(eps > 0.0 && eps < 1.0))
        throw InvalidConfigError("ShearSubsolution: eps must be in (0,1)");
}

void ShearSubsolution::check_time(double t) const {
    if (t < 0.0 || t >= horizon())
        throw HorizonError("ShearSubsolution: t outside [0, 1/(2 lambda))");
}

double ShearSubsolution::profile(double t, double y) const {
    check_time(t);
    if (y <= 0.0 || y >= 1.0) return 0.0;
    const double ramp = lambda_ * t;
    if (ramp == 0.0) return 1.0; // sheet initial datum on (0, 1)
    if (y < ramp) return y / ramp;
    if (y > 1.0 - ramp) return (1.0 - y) / ramp;
    return 1.0;
}

double ShearSubsolution::profile_dt(double t, double y) const {
    check_time(t);
    const double ramp = lambda_ * t;
    if (ramp == 0.0 || y <= 0.0 || y >= 1.0) return 0.0;
    if (y < ramp) return -y / (lambda_ * t * t);
    if (y > 1.0 - ramp) return -(1.0 - y) / (lambda_ * t * t);
    return 0.0;
}

double ShearSubsolution::profile_dy(double t, double y) const {
    check_time(t);
    const double ramp = lambda_ * t;
    if (ramp == 0.0 || y <= 0.0 || y >= 1.0) return 0.0;
    if (y < ramp) return 1.0 / ramp;
    if (y > 1.0 - ramp) return -1.0 / ramp;
    return 0.0;
}

double ShearSubsolution::flux(double t, double y) const {
    const double a = profile(t, y);
    const double g = 0.5 * lambda_ * (1.0 - a * a);
    return (y <= 0.5) ? -g : g;
}

double ShearSubsolution::flux_dy(double t, double y) const {
    const double a = profile(t, y);
    const double da = profile_dy(t, y);
    const double g = -lambda_ * a * da; // d/dy of (lambda/2)(1 - a^2)
    return (y <= 0.5) ? g : -g;
}

double ShearSubsolution::pressure(double t, double y) const {
    const double a = profile(t, y);
    return 0.5 * a * a;
}

double ShearSubsolution::energy_density(double t, double y) const {
    const double a = profile(t, y);
    return 0.5 - 0.5 * eps_ * (1.0 - lambda_) * (1.0 - a * a);
}

std::array<double, 2> ShearSubsolution::constraint_eigenvalues(double t, double y) const {
    const double a = profile(t, y);
    const double e = energy_density(t, y);
    const double g = std::abs(flux(t, y));
    const double base = e - 0.5 * a * a;
    return {base - g, base + g};
}

double ShearSubsolution::admissibility_margin(double t, double y) const {
    const double a = profile(t, y);
    return 0.5 * (1.0 - a * a) * (1.0 - lambda_) * (1.0 - eps_);
}

double ShearSubsolution::plateau_length(double t) const {
    check_time(t);
    return 1.0 - 2.0 * lambda_ * t;
}

double ShearSubsolution::energy_integral(double t) const {
    check_time(t);
    // int_0^1 (1 - a^2) dy = 2 * int over one ramp = (4/3) lambda t.
    return 0.5 - 0.5 * eps_ * (1.0 - lambda_) * (4.0 / 3.0) * lambda_ * t;
}

double ShearSubsolution::deviation_rate() const {
    const double edge_flux = flux(0.25 * horizon(), 1.0) - flux(0.25 * horizon(), 0.0);
    return edge_flux - energy_rate();
}

double ShearSubsolution::deviation_profile(double t) const {
    check_time(t);
    return deviation_rate() * t;
}

ResidualReport residual_check(const ShearSubsolution& s, int t_samples, int y_samples,
                              double kink_margin, double fd_step) {
    if (t_samples < 1 || y_samples < 1)
        throw InvalidConfigError("residual_check: need positive sample counts");
    ResidualReport rep{0.0, std::numeric_limits<double>::infinity()};
    const double T = s.horizon();
    for (int it = 0; it < t_samples; ++it) {
        // keep t away from 0 (degenerate ramps) and from the horizon
        const double t = T * (0.1 + 0.8 * (it + 0.5) / t_samples);
        const double ramp = s.lambda() * t;
        const double kinks[] = {0.0, ramp, 0.5, 1.0 - ramp, 1.0};
        for (int iy = 0; iy < y_samples; ++iy) {
            const double y = -1.0 + 3.0 * (iy + 0.5) / y_samples;
            if (y > -1.0 + kink_margin && y < 2.0 - kink_margin) {
                bool near_kink = false;
                for (double k : kinks) near_kink = near_kink || std::abs(y - k) < kink_margin;
                if (!near_kink && t - fd_step > 0.0 && t + fd_step < T) {
                    const double at = (s.profile(t + fd_step, y) - s.profile(t - fd_step, y)) /
                                      (2.0 * fd_step);
                    const double gy =
                        (s.flux(t, y + fd_step) - s.flux(t, y - fd_step)) / (2.0 * fd_step);
                    rep.max_transport_residual =
                        std::max(rep.max_transport_residual, std::abs(at + gy));
                }
            }
            rep.min_eigenvalue = std::min(rep.min_eigenvalue, s.constraint_eigenvalues(t, y)[0]);
        }
    }
    return rep;
}

RateReport rate_report(const ShearSubsolution& s, double t) {
    RateReport r{};
    r.energy_rate_formula = s.energy_rate();
    const double h = std::min(1e-6, 0.25 * (s.horizon() - t));
    if (!(h > 0.0) || t - h <= 0.0)
        throw HorizonError("rate_report: t too close to the horizon or zero");
    r.energy_rate_quadrature = -(s.energy_integral(t + h) - s.energy_integral(t - h)) / (2.0 * h);
    r.deviation_rate_formula = s.deviation_rate();
    r.edge_flux = s.flux(t, 1.0) - s.flux(t, 0.0);
    // d/dt int_0^1 profile dy, where the integral is the trapezoid area
    // 1 - lambda t; differenced for the ledger check.
    auto front_mass = [&](double tt) {
        // exact piecewise integral: plateau + two triangular ramps
        const double ramp = s.lambda() * tt;
        return (1.0 - 2.0 * ramp) + ramp;
    };
    r.front_mass_rate = (front_mass(t + h) - front_mass(t - h)) / (2.0 * h);
    return r;
}

RescaledSeparation rescale_profile(const ShearSubsolution& s, double A, double t) {
    if (!(A > 0.0)) throw InvalidConfigError("rescale_profile: A must be positive");
    if (!(t > 0.0) || t >= s.horizon() / A)
        throw HorizonError("rescale_profile: t outside (0, 1/(2 lambda A))");
    RescaledSeparation out{};
    out.separation = s.deviation_rate() * A * A * A * t;
    out.C = 2.0 * s.deviation_rate();
    return out;
}

} // namespace layersep
