#pragma once

#include <array>
#include <span>
#include <vector>

namespace layersep {

/// Weak Lorentz quasi-norm report: value = sup_sigma sigma |{|f| > sigma}|^{1/p}
/// over a measured sample set. The supremum of the piecewise level-set curve
/// is attained in the limit sigma -> v^- at sample values v, where it equals
/// v |{|f| >= v}|^{1/p}; those candidates are what the estimator scans.
struct LorentzReport {
    double p = 0.0;
    double value = 0.0;      // the quasi-norm
    double sigma_star = 0.0; // maximizing level
    // rows (sigma, measure of {|f| >= sigma}, sigma * measure^{1/p})
    std::vector<std::array<double, 3>> curve;
};

LorentzReport weak_lorentz(std::span<const double> values, std::span<const double> measures,
                           double p);

/// Convenience for equal cell measures.
LorentzReport weak_lorentz_uniform(std::span<const double> values, double cell_measure, double p);

} // namespace layersep
