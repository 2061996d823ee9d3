#include "layersep/lorentz.hpp"

#include <algorithm>
#include <cmath>

#include "layersep/errors.hpp"

namespace layersep {

LorentzReport weak_lorentz(std::span<const double> values, std::span<const double> measures,
                           double p) {
    if (!(p > 0.0)) throw InvalidConfigError("weak_lorentz: p must be positive");
    if (values.size() != measures.size())
        throw ShapeError("weak_lorentz: values and measures length mismatch");
    LorentzReport rep;
    rep.p = p;
    if (values.empty()) return rep;

    std::vector<std::pair<double, double>> lv(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) lv[k] = {std::abs(values[k]), measures[k]};
    std::sort(lv.begin(), lv.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

    double cum = 0.0;
    std::size_t k = 0;
    while (k < lv.size()) {
        const double v = lv[k].first;
        while (k < lv.size() && lv[k].first == v) {
            cum += lv[k].second;
            ++k;
        }
        if (v <= 0.0) break;
        const double cand = v * std::pow(cum, 1.0 / p);
        rep.curve.push_back({v, cum, cand});
        if (cand > rep.value) {
            rep.value = cand;
            rep.sigma_star = v;
        }
    }
    return rep;
}

LorentzReport weak_lorentz_uniform(std::span<const double> values, double cell_measure, double p) {
    std::vector<double> m(values.size(), cell_measure);
    return weak_lorentz(values, m, p);
}

} // namespace layersep
