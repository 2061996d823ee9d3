#include "layersep/fields.hpp"

#include <algorithm>
#include <cmath>

namespace layersep {

namespace {

void check_scalar(const Grid& g, const ScalarField& f) {
    if (f.nx() != g.nx || f.ny() != g.ny)
        throw ShapeError("scalar field dimensions do not match grid");
}

void check_velocity(const Grid& g, const VelocityField& f) {
    if (f.nx() != g.nx || f.ny() != g.ny)
        throw ShapeError("velocity field dimensions do not match grid");
}

} // namespace

double l2_norm(const Grid& g, const ScalarField& f) {
    check_scalar(g, f);
    double s = 0.0;
    for (double x : f.data()) s += x * x;
    return std::sqrt(s * g.dx * g.dy);
}

double l2_norm(const Grid& g, const VelocityField& f) {
    check_velocity(g, f);
    double s = 0.0;
    for (double x : f.u_data()) s += x * x;
    // Interior v faces own a full cell; the wall rows carry half a cell and
    // are zero for any admissible field.
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) s += f.v(i, j) * f.v(i, j);
    for (int i = 0; i < g.nx; ++i)
        s += 0.5 * (f.v(i, 0) * f.v(i, 0) + f.v(i, g.ny) * f.v(i, g.ny));
    return std::sqrt(s * g.dx * g.dy);
}

double l2_distance_sq_to_uniform(const Grid& g, const VelocityField& f, double A) {
    check_velocity(g, f);
    double s = 0.0;
    for (double x : f.u_data()) {
        const double d = x - A;
        s += d * d;
    }
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) s += f.v(i, j) * f.v(i, j);
    return s * g.dx * g.dy;
}

double l2_distance_sq(const Grid& g, const VelocityField& a, const VelocityField& b) {
    check_velocity(g, a);
    check_velocity(g, b);
    double s = 0.0;
    for (std::size_t k = 0; k < a.u_data().size(); ++k) {
        const double d = a.u_data()[k] - b.u_data()[k];
        s += d * d;
    }
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double d = a.v(i, j) - b.v(i, j);
            s += d * d;
        }
    return s * g.dx * g.dy;
}

double kinetic_energy(const Grid& g, const VelocityField& f) {
    const double n = l2_norm(g, f);
    return 0.5 * n * n;
}

double max_speed(const VelocityField& f) {
    double m = 0.0;
    for (double x : f.u_data()) m = std::max(m, std::abs(x));
    for (double x : f.v_data()) m = std::max(m, std::abs(x));
    return m;
}

ScalarField divergence(const Grid& g, const VelocityField& f) {
    check_velocity(g, f);
    ScalarField div(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int ip = (i + 1 == g.nx) ? 0 : i + 1;
            div(i, j) = (f.u(ip, j) - f.u(i, j)) / g.dx + (f.v(i, j + 1) - f.v(i, j)) / g.dy;
        }
    return div;
}

VelocityField face_gradient(const Grid& g, const ScalarField& p) {
    check_scalar(g, p);
    VelocityField grad(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int im = (i == 0) ? g.nx - 1 : i - 1;
            grad.u(i, j) = (p(i, j) - p(im, j)) / g.dx;
        }
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) grad.v(i, j) = (p(i, j) - p(i, j - 1)) / g.dy;
    return grad;
}

VelocityGradient gradient(const Grid& g, const VelocityField& f) {
    check_velocity(g, f);
    VelocityGradient t{ScalarField(g), ScalarField(g), ScalarField(g), ScalarField(g)};

    // Cell-centered interpolants of each component.
    ScalarField uc(g), vc(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int ip = (i + 1 == g.nx) ? 0 : i + 1;
            uc(i, j) = 0.5 * (f.u(i, j) + f.u(ip, j));
            vc(i, j) = 0.5 * (f.v(i, j) + f.v(i, j + 1));
        }

    const int jtop = g.ny - 1;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int ip = (i + 1 == g.nx) ? 0 : i + 1;
            const int im = (i == 0) ? g.nx - 1 : i - 1;
            t.dudx(i, j) = (f.u(ip, j) - f.u(i, j)) / g.dx;
            t.dvdy(i, j) = (f.v(i, j + 1) - f.v(i, j)) / g.dy;
            t.dvdx(i, j) = (vc(ip, j) - vc(im, j)) / (2.0 * g.dx);
            if (j == 0)
                t.dudy(i, j) = (-3.0 * uc(i, 0) + 4.0 * uc(i, 1) - uc(i, 2)) / (2.0 * g.dy);
            else if (j == jtop)
                t.dudy(i, j) = (3.0 * uc(i, jtop) - 4.0 * uc(i, jtop - 1) + uc(i, jtop - 2)) / (2.0 * g.dy);
            else
                t.dudy(i, j) = (uc(i, j + 1) - uc(i, j - 1)) / (2.0 * g.dy);
        }
    return t;
}

ScalarField dissipation_density(const Grid& g, const VelocityField& f) {
    const VelocityGradient t = gradient(g, f);
    ScalarField d(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double a = t.dudx(i, j), b = t.dudy(i, j), c = t.dvdx(i, j), e = t.dvdy(i, j);
            d(i, j) = a * a + b * b + c * c + e * e;
        }
    return d;
}

std::vector<double> curl2d(const Grid& g, const VelocityField& f) {
    check_velocity(g, f);
    std::vector<double> w(static_cast<std::size_t>(g.nx) * (g.ny + 1), 0.0);
    auto at = [&](int i, int j) -> double& { return w[static_cast<std::size_t>(j) * g.nx + i]; };
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int im = (i == 0) ? g.nx - 1 : i - 1;
            at(i, j) = (f.v(i, j) - f.v(im, j)) / g.dx - (f.u(i, j) - f.u(i, j - 1)) / g.dy;
        }
    const std::vector<double> bot = wall_vorticity(g, f, Wall::bottom);
    const std::vector<double> top = wall_vorticity(g, f, Wall::top);
    for (int i = 0; i < g.nx; ++i) {
        at(i, 0) = bot[i];
        at(i, g.ny) = top[i];
    }
    return w;
}

std::vector<double> wall_vorticity(const Grid& g, const VelocityField& f, Wall wall) {
    check_velocity(g, f);
    std::vector<double> w(g.nx, 0.0);
    // Quadratic fit through u(wall) = 0 and the two nearest u samples:
    // du/dy at the wall is (9 u0 - u1) / (3 dy) measured away from the wall.
    if (wall == Wall::bottom) {
        for (int i = 0; i < g.nx; ++i)
            w[i] = -(9.0 * f.u(i, 0) - f.u(i, 1)) / (3.0 * g.dy);
    } else {
        const int jt = g.ny - 1;
        for (int i = 0; i < g.nx; ++i)
            w[i] = (9.0 * f.u(i, jt) - f.u(i, jt - 1)) / (3.0 * g.dy);
    }
    return w;
}

std::vector<double> wall_vorticity_general(const Grid& g, const VelocityField& f, Wall wall) {
    check_velocity(g, f);
    std::vector<double> w(g.nx, 0.0);
    // du/dy extrapolated to the wall from three cell rows (exact for
    // quadratics, no boundary value assumed).
    if (wall == Wall::bottom) {
        for (int i = 0; i < g.nx; ++i)
            w[i] = -(3.0 * f.u(i, 1) - 2.0 * f.u(i, 0) - f.u(i, 2)) / g.dy;
    } else {
        const int jt = g.ny - 1;
        for (int i = 0; i < g.nx; ++i)
            w[i] = (3.0 * f.u(i, jt - 1) - 2.0 * f.u(i, jt) - f.u(i, jt - 2)) / g.dy;
    }
    return w;
}

double integration_by_parts_defect(const Grid& g, const ScalarField& f, const VelocityField& vec) {
    const VelocityField gf = face_gradient(g, f);
    const ScalarField dv = divergence(g, vec);
    double a = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) a += gf.u(i, j) * vec.u(i, j);
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) a += gf.v(i, j) * vec.v(i, j);
    double b = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) b += f(i, j) * dv(i, j);
    return (a + b) * g.dx * g.dy;
}

} // namespace layersep
