#pragma once

#include <cstddef>

#include "layersep/errors.hpp"

namespace layersep {

/// Which physical wall of the channel.
enum class Wall { bottom, top };

/// Periodic channel of period W in x and height H in y. Walls sit at
/// y = 0 and y = H; the x direction wraps with period W.
struct ChannelGeometry {
    double W = 1.0;
    double H = 1.0;
    int d = 2; // spatial dimension; the solver only runs d = 2

    ChannelGeometry() = default;
    ChannelGeometry(double width, double height, int dim = 2) : W(width), H(height), d(dim) {
        if (!(W > 0.0) || !(H > 0.0))
            throw InvalidConfigError("ChannelGeometry: W and H must be positive");
        if (d != 2 && d != 3)
            throw InvalidConfigError("ChannelGeometry: dimension must be 2 or 3");
    }

    double area() const { return W * H; }          // |Omega|
    double boundary_measure() const { return 2.0 * W; } // |dOmega|, two walls
};

/// Uniform cell grid over a ChannelGeometry. Cell (i, j) spans
/// [i dx, (i+1) dx] x [j dy, (j+1) dy].
struct Grid {
    int nx = 0;
    int ny = 0;
    double dx = 0.0;
    double dy = 0.0;
    ChannelGeometry geom;

    Grid() = default;
    Grid(const ChannelGeometry& g, int cells_x, int cells_y) : nx(cells_x), ny(cells_y), geom(g) {
        if (nx < 4 || ny < 4)
            throw InvalidConfigError("Grid: nx and ny must be at least 4");
        dx = geom.W / nx;
        dy = geom.H / ny;
    }

    double xc(int i) const { return (i + 0.5) * dx; } // cell center
    double yc(int j) const { return (j + 0.5) * dy; }
    double xf(int i) const { return i * dx; } // x-face (u sample) position
    double yf(int j) const { return j * dy; } // y-face (v sample) position

    int wrap(int i) const {
        i %= nx;
        return i < 0 ? i + nx : i;
    }

    std::size_t cell_count() const { return static_cast<std::size_t>(nx) * ny; }
};

/// Sign factor of J[w] = n-perp . w for a tangential wall velocity w = w1 e1.
/// The outer normal is -e2 at the bottom wall and +e2 at the top wall; n-perp
/// is the counterclockwise rotation of n, so J[w] = +w1 at the bottom and
/// -w1 at the top. This orientation reproduces the discrete energy ledger's
/// wall term (see energy_identity_terms).
inline double j_sign(Wall wall) { return wall == Wall::bottom ? 1.0 : -1.0; }

/// J[w] for a wall-tangential velocity of x-component u1.
inline double j_of(Wall wall, double u1) { return j_sign(wall) * u1; }

} // namespace layersep
