#include "layersep/maximal.hpp"

#include <algorithm>
#include <cmath>

namespace layersep {

double parabolic_maximal(const DensityView& f, double t, double x, double y,
                         const RadiiPolicy& radii) {
    if (radii.levels < 1 || !(radii.r_max > 0.0))
        throw InvalidConfigError("parabolic_maximal: bad radii policy");
    double best = 0.0;
    double r = radii.r_max;
    for (int lev = 0; lev < radii.levels; ++lev, r *= 0.5) {
        const Box b{t - r * r, t + r * r, x - r, x + r, y - r, y + r};
        const double vol = 2.0 * r * r * (2.0 * r) * (2.0 * r);
        const double mean = f.box_integral(b, /*wrap_x=*/false) / vol;
        best = std::max(best, mean);
    }
    return best;
}

std::vector<double> maximal_transform(const SampledDensity& f, const RadiiPolicy& radii) {
    std::vector<double> out(f.values().size(), 0.0);
    const double dt = f.cell_dt(), dx = f.cell_dx(), dy = f.cell_dy();
    std::size_t m = 0;
    for (int k = 0; k < f.nt(); ++k)
        for (int j = 0; j < f.ny(); ++j)
            for (int i = 0; i < f.nx(); ++i, ++m) {
                const double t = (k + 0.5) * dt;
                const double x = (i + 0.5) * dx;
                const double y = (j + 0.5) * dy;
                out[m] = parabolic_maximal(f, t, x, y, radii);
            }
    return out;
}

Weak11Fit weak11_fit(const SampledDensity& f, const RadiiPolicy& radii) {
    const std::vector<double> mf = maximal_transform(f, radii);
    const double cell = f.cell_dt() * f.cell_dx() * f.cell_dy();
    const LorentzReport rep = weak_lorentz_uniform(mf, cell, 1.0);
    double l1 = 0.0;
    for (double v : f.values()) l1 += std::abs(v);
    l1 *= cell;
    Weak11Fit fit{rep.value, l1, 0.0};
    fit.constant = l1 > 0.0 ? rep.value / l1 : 0.0;
    return fit;
}

} // namespace layersep
