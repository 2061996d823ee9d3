#include "layersep/prandtl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace layersep {
namespace prandtl {

namespace {
constexpr double kPi = std::numbers::pi;
}

double ShearProfile::initial_l2() const {
    double s = 0.0;
    for (double b : coeffs) s += b * b;
    return std::sqrt(0.5 * H * s);
}

double ShearProfile::value(double t, double y) const {
    if (t < 0.0) throw InvalidConfigError("ShearProfile::value: t must be nonnegative");
    const double damp = nu * kPi * kPi * t / (H * H);
    double s = 0.0;
    for (int n = modes(); n >= 1; --n) {
        const double e = std::exp(-damp * n * n);
        if (e == 0.0) continue;
        s += coeffs[n - 1] * std::sin(n * kPi * y / H) * e;
    }
    return s;
}

double ShearProfile::gradient(double t, double y) const {
    if (t < 0.0) throw InvalidConfigError("ShearProfile::gradient: t must be nonnegative");
    const double damp = nu * kPi * kPi * t / (H * H);
    double s = 0.0;
    for (int n = modes(); n >= 1; --n) {
        const double e = std::exp(-damp * n * n);
        if (e == 0.0) continue;
        s += coeffs[n - 1] * (n * kPi / H) * std::cos(n * kPi * y / H) * e;
    }
    return s;
}

double ShearProfile::max_gradient(double t, int samples) const {
    double m = std::max(std::abs(gradient(t, 0.0)), std::abs(gradient(t, H)));
    for (int k = 1; k < samples; ++k) {
        const double y = H * k / samples;
        m = std::max(m, std::abs(gradient(t, y)));
    }
    return m;
}

ShearProfile sine_coefficients(std::span<const double> samples, double H, double nu, int modes) {
    const int n = static_cast<int>(samples.size());
    if (n < 2) throw InvalidConfigError("sine_coefficients: need at least two samples");
    if (modes > n) throw InvalidConfigError("sine_coefficients: mode count exceeds sample count");
    if (modes < 1) throw InvalidConfigError("sine_coefficients: need at least one mode");
    ShearProfile p;
    p.H = H;
    p.nu = nu;
    p.coeffs.resize(modes, 0.0);
    // Midpoint-sample sine transform; the discrete sine family is orthogonal
    // at the midpoints with squared norm n/2 for m < n and n at m = n.
    for (int m = 1; m <= modes; ++m) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += samples[j] * std::sin(m * kPi * (j + 0.5) / n);
        const double norm = (m == n) ? static_cast<double>(n) : n / 2.0;
        p.coeffs[m - 1] = s / norm;
    }
    return p;
}

ShearProfile constant_profile(double A, double H, double nu, int modes) {
    ShearProfile p;
    p.H = H;
    p.nu = nu;
    p.coeffs.resize(modes, 0.0);
    for (int n = 1; n <= modes; n += 2) p.coeffs[n - 1] = 4.0 * A / (n * kPi);
    return p;
}

DecayCheck lipschitz_decay_check(const ShearProfile& p, double t) {
    if (!(t > 0.0)) throw InvalidConfigError("lipschitz_decay_check: undefined bound at t = 0");
    DecayCheck c;
    c.lhs = p.max_gradient(t);
    c.rhs = 0.5 * std::pow(p.nu * t, -0.75) * p.initial_l2();
    return c;
}

SeriesBound series_bound_check(double z) {
    if (!(z > 0.0)) throw InvalidConfigError("series_bound_check: z must be positive");
    double s = 0.0;
    for (int n = 1;; ++n) {
        const double term = static_cast<double>(n) * n * std::exp(-static_cast<double>(n) * n * z);
        s += term;
        // Tail after n is dominated by a geometric series with ratio
        // exp(-(2n+1) z); stop when that bound drops below 1e-15.
        if (n * z >= 1.0) {
            const double ratio = 4.0 * std::exp(-(2.0 * n + 1.0) * z);
            const double tail = term * ratio / (1.0 - ratio);
            if (tail < 1e-15) break;
        }
        if (n > 100000000) break;
    }
    return {s, std::pow(z, -1.5)};
}

Horizon prandtl_horizon(double E, double boundary_measure, double nu, double T) {
    if (!(E > 0.0) || !(boundary_measure > 0.0) || !(nu > 0.0) || !(T > 0.0))
        throw InvalidConfigError("prandtl_horizon: all arguments must be positive");
    Horizon h;
    const double c = std::pow(std::log(2.0) / 4.0, 4.0);
    h.t_star = c / (E * E) * boundary_measure * boundary_measure * nu * nu * nu;
    if (T < 0.25 * h.t_star) {
        h.t_snapped = T;
        h.k = 0;
        h.degenerate = true;
        return h;
    }
    int k = 0;
    double tn = T;
    while (tn > h.t_star && k < 2048) {
        tn *= 0.25;
        ++k;
    }
    h.t_snapped = tn;
    h.k = k;
    return h;
}

TimespanBudget timespan_budget(const Horizon& h, double E, double boundary_measure, double nu) {
    TimespanBudget b;
    b.lhs = 4.0 * std::pow(nu, -0.75) * std::pow(h.t_snapped, 0.25) * std::sqrt(E / boundary_measure);
    b.budget = std::log(2.0);
    return b;
}

} // namespace prandtl
} // namespace layersep
