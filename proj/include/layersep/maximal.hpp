#pragma once

#include <vector>

#include "layersep/density.hpp"
#include "layersep/lorentz.hpp"

namespace layersep {

/// Dyadic radius ladder r_max, r_max/2, ..., r_max 2^{-(levels-1)}. The
/// supremum over this ladder under-estimates the true supremum over all
/// radii by at most the dyadic comparability factor (a power of the scaling
/// dimension, 2^{d+2} in the worst case for d = 2), which cancels in the
/// fitted-constant comparisons this module is used for.
struct RadiiPolicy {
    double r_max = 1.0;
    int levels = 20;
};

/// Parabolic maximal value sup_r avg over (t - r^2, t + r^2) x B_r(x, y) of a
/// non-negative density, zero-extended outside its domain (no periodic wrap:
/// the extension convention of the maximal operator).
double parabolic_maximal(const DensityView& f, double t, double x, double y,
                         const RadiiPolicy& radii);

/// Maximal values at every lattice cell center of a sampled density.
std::vector<double> maximal_transform(const SampledDensity& f, const RadiiPolicy& radii);

/// Weak (1,1) diagnostics: ||Mf||_{L^{1,inf}} over the lattice, ||f||_{L^1},
/// and their ratio (the empirical weak-type constant).
struct Weak11Fit {
    double maximal_weak_norm;
    double l1_norm;
    double constant;
};
Weak11Fit weak11_fit(const SampledDensity& f, const RadiiPolicy& radii);

} // namespace layersep
