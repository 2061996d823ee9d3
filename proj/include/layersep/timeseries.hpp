#pragma once

#include <algorithm>
#include <vector>

namespace layersep {

/// Value of the piecewise-linear interpolant of (times, values) at t,
/// clamped to the end values outside the span.
inline double series_value_at(const std::vector<double>& ts, const std::vector<double>& vs,
                              double t) {
    auto it = std::upper_bound(ts.begin(), ts.end(), t);
    if (it == ts.begin()) return vs.front();
    if (it == ts.end()) return vs.back();
    const std::size_t k = static_cast<std::size_t>(it - ts.begin());
    const double w = (t - ts[k - 1]) / (ts[k] - ts[k - 1]);
    return vs[k - 1] * (1.0 - w) + vs[k] * w;
}

/// Integral of the piecewise-linear interpolant over [a, b] (trapezoid rule
/// with fractional end segments).
inline double series_integral(const std::vector<double>& ts, const std::vector<double>& vs,
                              double a, double b) {
    double acc = 0.0;
    double t0 = a, v0 = series_value_at(ts, vs, a);
    for (std::size_t k = 0; k < ts.size(); ++k) {
        if (ts[k] <= a) continue;
        if (ts[k] >= b) break;
        acc += 0.5 * (v0 + vs[k]) * (ts[k] - t0);
        t0 = ts[k];
        v0 = vs[k];
    }
    acc += 0.5 * (v0 + series_value_at(ts, vs, b)) * (b - t0);
    return acc;
}

/// Strided variants for row-major (sample, x) traces.
double strided_series_integral(const std::vector<double>& ts, const double* vals, int stride,
                               double a, double b);

/// Number of sample times inside [a, b].
inline int series_samples_in(const std::vector<double>& ts, double a, double b) {
    auto lo = std::lower_bound(ts.begin(), ts.end(), a);
    auto hi = std::upper_bound(ts.begin(), ts.end(), b);
    return static_cast<int>(hi - lo);
}

} // namespace layersep
