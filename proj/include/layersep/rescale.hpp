#pragma once

#include "layersep/density.hpp"
#include "layersep/fields.hpp"
#include "layersep/solver.hpp"

namespace layersep {

/// Unit-viscosity rescale u(t, x) = u_nu(nu t, nu x): time and space shrink
/// by nu, velocities are unchanged, gradients and vorticities pick up a
/// factor nu. These helpers produce the rescaled view of stored run data.

inline ChannelGeometry rescale_geometry(const ChannelGeometry& g, double nu) {
    if (!(nu > 0.0)) throw InvalidConfigError("rescale_geometry: nu must be positive");
    return ChannelGeometry(g.W / nu, g.H / nu, g.d);
}

/// Snapshot on the rescaled grid: same samples, geometry divided by nu.
inline Grid rescale_grid(const Grid& g, double nu) {
    return Grid(rescale_geometry(g.geom, nu), g.nx, g.ny);
}

/// Wall vorticity trace in rescaled variables: times t/nu, values nu * w,
/// period W/nu.
BoundaryVorticityTrace rescale_trace(const BoundaryVorticityTrace& trace, double nu);

/// Dissipation density |grad u|^2 in rescaled variables: extents divided by
/// nu, samples multiplied by nu^2.
SampledDensity rescale_density(const SampledDensity& d, double nu);

} // namespace layersep
