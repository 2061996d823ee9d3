#include "layersep/rescale.hpp"

namespace layersep {

BoundaryVorticityTrace rescale_trace(const BoundaryVorticityTrace& trace, double nu) {
    if (!(nu > 0.0)) throw InvalidConfigError("rescale_trace: nu must be positive");
    BoundaryVorticityTrace out;
    out.nx = trace.nx;
    out.period = trace.period / nu;
    out.times.reserve(trace.times.size());
    for (double t : trace.times) out.times.push_back(t / nu);
    out.bottom.reserve(trace.bottom.size());
    for (double v : trace.bottom) out.bottom.push_back(v * nu);
    out.top.reserve(trace.top.size());
    for (double v : trace.top) out.top.push_back(v * nu);
    return out;
}

SampledDensity rescale_density(const SampledDensity& d, double nu) {
    if (!(nu > 0.0)) throw InvalidConfigError("rescale_density: nu must be positive");
    SampledDensity out = d;
    out.set_extents(d.span_t() / nu, d.span_x() / nu, d.span_y() / nu);
    out.apply_scale(nu * nu);
    return out;
}

} // namespace layersep
