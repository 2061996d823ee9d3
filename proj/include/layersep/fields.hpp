#pragma once

#include <cstddef>
#include <vector>

#include "layersep/geometry.hpp"

namespace layersep {

/// Cell-centered scalar samples, row-major with x fastest: value(i, j) at
/// (xc(i), yc(j)). Periodic in x.
class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(const Grid& g, double fill = 0.0)
        : nx_(g.nx), ny_(g.ny), data_(g.cell_count(), fill) {}

    double& operator()(int i, int j) { return data_[idx(i, j)]; }
    double operator()(int i, int j) const { return data_[idx(i, j)]; }

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

private:
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * nx_ + i; }
    int nx_ = 0, ny_ = 0;
    std::vector<double> data_;
};

/// Marker-and-cell staggered velocity. u(i, j) is the x-velocity at the west
/// face of cell (i, j), position (xf(i), yc(j)), i periodic, j = 0..ny-1.
/// v(i, j) is the y-velocity at the south face, position (xc(i), yf(j)),
/// j = 0..ny; the wall rows v(., 0) and v(., ny) are held at zero.
class VelocityField {
public:
    VelocityField() = default;
    explicit VelocityField(const Grid& g)
        : nx_(g.nx), ny_(g.ny),
          u_(static_cast<std::size_t>(g.nx) * g.ny, 0.0),
          v_(static_cast<std::size_t>(g.nx) * (g.ny + 1), 0.0) {}

    double& u(int i, int j) { return u_[uidx(i, j)]; }
    double u(int i, int j) const { return u_[uidx(i, j)]; }
    double& v(int i, int j) { return v_[vidx(i, j)]; }
    double v(int i, int j) const { return v_[vidx(i, j)]; }

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    std::vector<double>& u_data() { return u_; }
    std::vector<double>& v_data() { return v_; }
    const std::vector<double>& u_data() const { return u_; }
    const std::vector<double>& v_data() const { return v_; }

    void enforce_wall_rows() {
        for (int i = 0; i < nx_; ++i) {
            v_[vidx(i, 0)] = 0.0;
            v_[vidx(i, ny_)] = 0.0;
        }
    }

private:
    std::size_t uidx(int i, int j) const { return static_cast<std::size_t>(j) * nx_ + i; }
    std::size_t vidx(int i, int j) const { return static_cast<std::size_t>(j) * nx_ + i; }
    int nx_ = 0, ny_ = 0;
    std::vector<double> u_;
    std::vector<double> v_;
};

/// Cell-centered velocity gradient tensor.
struct VelocityGradient {
    ScalarField dudx, dudy, dvdx, dvdy;
};

// ---------------------------------------------------------------------------
// Integral norms (midpoint rule on the staggered control volumes)
// ---------------------------------------------------------------------------

double l2_norm(const Grid& g, const ScalarField& f);
double l2_norm(const Grid& g, const VelocityField& f);

/// Squared L2 norm of (f - (A, 0)) for a constant shear comparison state.
double l2_distance_sq_to_uniform(const Grid& g, const VelocityField& f, double A);

/// Squared L2 distance between two velocity fields on the same grid.
double l2_distance_sq(const Grid& g, const VelocityField& a, const VelocityField& b);

/// Kinetic energy (1/2)||f||^2.
double kinetic_energy(const Grid& g, const VelocityField& f);

/// Maximum face speed, used for CFL control.
double max_speed(const VelocityField& f);

// ---------------------------------------------------------------------------
// Discrete differential operators
// ---------------------------------------------------------------------------

/// Cell-centered divergence (u_e - u_w)/dx + (v_n - v_s)/dy.
ScalarField divergence(const Grid& g, const VelocityField& f);

/// Face gradient of a cell-centered scalar: x-part at u faces, y-part at
/// v faces with zero rows at the walls (homogeneous Neumann convention).
VelocityField face_gradient(const Grid& g, const ScalarField& p);

/// Cell-centered velocity gradient tensor: centered differences in the
/// interior, one-sided second order (3 point) at the wall-adjacent rows.
VelocityGradient gradient(const Grid& g, const VelocityField& f);

/// Pointwise |grad u|^2 from the cell-centered tensor.
ScalarField dissipation_density(const Grid& g, const VelocityField& f);

/// Corner-sampled 2D vorticity w = dv/dx - du/dy. Returned with x index
/// i = 0..nx-1 (corner at xf(i)) and y index j = 0..ny (corner at yf(j));
/// the wall rows j = 0 and j = ny use the no-slip one-sided stencil and
/// match wall_vorticity below.
std::vector<double> curl2d(const Grid& g, const VelocityField& f);

/// Wall vorticity -du/dy at the requested wall, sampled at the x faces.
/// Uses the quadratic one-sided stencil consistent with u = 0 on the wall;
/// since u vanishes along the wall, dv/dx = 0 there and the curl reduces
/// to -du/dy at both walls.
std::vector<double> wall_vorticity(const Grid& g, const VelocityField& f, Wall wall);

/// Same quantity without assuming a wall value: a three-sample one-sided
/// quadratic fit. Needed for comparison states that do not satisfy no-slip
/// (it vanishes on constant fields where the no-slip stencil would not).
std::vector<double> wall_vorticity_general(const Grid& g, const VelocityField& f, Wall wall);

/// <grad f, g> + <f, div g> for cell-centered f and MAC field g; exactly
/// zero (up to rounding) when g has zero wall rows.
double integration_by_parts_defect(const Grid& g, const ScalarField& f, const VelocityField& vec);

} // namespace layersep
