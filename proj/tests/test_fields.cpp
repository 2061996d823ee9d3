#include "doctest.h"

#include <cmath>
#include <numbers>

#include "layersep/fields.hpp"

using namespace layersep;

namespace {
constexpr double kPi = std::numbers::pi;

Grid unit_grid(int nx, int ny) { return Grid(ChannelGeometry(1.0, 1.0), nx, ny); }

// Divergence-free field from a corner streamfunction that vanishes at the
// walls (discrete curl, so the MAC divergence is exactly zero).
VelocityField from_streamfunction(const Grid& g, double (*psi)(double, double)) {
    VelocityField f(g);
    auto P = [&](int i, int j) { return psi(g.xf(i), g.yf(j)); };
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) f.u(i, j) = (P(i, j + 1) - P(i, j)) / g.dy;
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int ip = (i + 1 == g.nx) ? 0 : i + 1;
            f.v(i, j) = -(P(ip, j) - P(i, j)) / g.dx;
        }
    return f;
}

} // namespace

TEST_CASE("l2_norm: zero, constant, single mode") {
    const Grid g = unit_grid(256, 256);
    ScalarField zero(g);
    CHECK(l2_norm(g, zero) == 0.0);

    ScalarField c(g, -2.5);
    CHECK(l2_norm(g, c) == doctest::Approx(2.5).epsilon(1e-14));

    ScalarField s(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) s(i, j) = std::sin(2.0 * kPi * g.xc(i));
    CHECK(l2_norm(g, s) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-3));
}

TEST_CASE("l2_norm: homogeneity is exact") {
    const Grid g = unit_grid(16, 16);
    ScalarField f(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) f(i, j) = std::sin(3.0 * g.xc(i)) + g.yc(j);
    const double base = l2_norm(g, f);
    for (double& x : f.data()) x *= -7.0;
    CHECK(l2_norm(g, f) == doctest::Approx(7.0 * base).epsilon(1e-15));
}

TEST_CASE("l2_norm: dimension mismatch raises shape error") {
    const Grid g = unit_grid(16, 16);
    const Grid g2 = unit_grid(32, 16);
    ScalarField f(g2);
    CHECK_THROWS_AS(l2_norm(g, f), ShapeError);
    VelocityField v(g2);
    CHECK_THROWS_AS(l2_norm(g, v), ShapeError);
}

TEST_CASE("gradient: constant and linear shear are exact") {
    const Grid g = unit_grid(32, 32);
    VelocityField c(g);
    for (double& x : c.u_data()) x = 3.0;
    const VelocityGradient tc = gradient(g, c);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            CHECK(tc.dudx(i, j) == doctest::Approx(0.0).epsilon(1e-14));
            CHECK(tc.dudy(i, j) == doctest::Approx(0.0).epsilon(1e-14));
        }

    VelocityField shear(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) shear.u(i, j) = g.yc(j);
    const VelocityGradient t = gradient(g, shear);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            CHECK(t.dudy(i, j) == doctest::Approx(1.0).epsilon(1e-13));
            CHECK(t.dudx(i, j) == doctest::Approx(0.0).epsilon(1e-13));
            CHECK(t.dvdx(i, j) == doctest::Approx(0.0).epsilon(1e-13));
            CHECK(t.dvdy(i, j) == doctest::Approx(0.0).epsilon(1e-13));
        }
}

TEST_CASE("gradient: second-order convergence on a smooth mode") {
    double errs[2];
    int idx = 0;
    for (int n : {64, 128}) {
        const Grid g = unit_grid(n, n);
        VelocityField f(g);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) f.u(i, j) = std::sin(2.0 * kPi * g.xf(i));
        const VelocityGradient t = gradient(g, f);
        double emax = 0.0;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const double exact = 2.0 * kPi * std::cos(2.0 * kPi * g.xc(i));
                emax = std::max(emax, std::abs(t.dudx(i, j) - exact));
            }
        errs[idx++] = emax;
    }
    const double order = std::log2(errs[0] / errs[1]);
    CHECK(order > 1.9);
}

TEST_CASE("curl2d: rigid rotation, shear, gradient field") {
    const Grid g = unit_grid(64, 64);

    VelocityField rot(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) rot.u(i, j) = -g.yc(j);
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) rot.v(i, j) = g.xc(i);
    const std::vector<double> w = curl2d(g, rot);
    // interior corners away from the periodic wrap column
    for (int j = 1; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i)
            CHECK(w[static_cast<std::size_t>(j) * g.nx + i] == doctest::Approx(2.0).epsilon(1e-12));

    VelocityField shear(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) shear.u(i, j) = std::sin(kPi * g.yc(j)); // U(y)
    const std::vector<double> ws = curl2d(g, shear);
    for (int j = 1; j < g.ny; ++j) {
        const double exact = -kPi * std::cos(kPi * g.yf(j)); // -U'(y)
        CHECK(ws[static_cast<std::size_t>(j) * g.nx + 7] == doctest::Approx(exact).epsilon(2e-3));
    }

    // curl of a face gradient vanishes identically at interior corners
    ScalarField phi(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            phi(i, j) = std::cos(2.0 * kPi * g.xc(i)) * std::sin(5.0 * g.yc(j));
    const VelocityField gr = face_gradient(g, phi);
    const std::vector<double> wg = curl2d(g, gr);
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            CHECK(std::abs(wg[static_cast<std::size_t>(j) * g.nx + i]) < 1e-10);
}

TEST_CASE("wall pairing sign J[w]") {
    CHECK(j_of(Wall::bottom, 2.5) == 2.5);
    CHECK(j_of(Wall::bottom, 0.0) == 0.0);
    CHECK(j_of(Wall::top, 2.5) == -2.5);
}

TEST_CASE("wall_vorticity: linear and zero profiles") {
    const Grid g = unit_grid(16, 64);
    VelocityField lin(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) lin.u(i, j) = g.yc(j);
    const std::vector<double> wb = wall_vorticity(g, lin, Wall::bottom);
    for (double v : wb) CHECK(v == doctest::Approx(-1.0).epsilon(1e-13));

    VelocityField lin_top(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) lin_top.u(i, j) = 1.0 - g.yc(j); // vanishes at the top wall
    const std::vector<double> wt = wall_vorticity(g, lin_top, Wall::top);
    for (double v : wt) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));

    VelocityField zero(g);
    for (double v : wall_vorticity(g, zero, Wall::bottom)) CHECK(v == 0.0);
}

TEST_CASE("discrete integration by parts is exact for admissible fields") {
    const Grid g = unit_grid(32, 48);
    ScalarField f(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) f(i, j) = std::cos(2.0 * kPi * g.xc(i)) + 0.3 * g.yc(j);
    const VelocityField vec =
        from_streamfunction(g, +[](double x, double y) {
            return std::sin(2.0 * std::numbers::pi * x) * y * y * (1.0 - y) * (1.0 - y);
        });
    CHECK(std::abs(integration_by_parts_defect(g, f, vec)) < 1e-13);
}

TEST_CASE("divergence of streamfunction fields is exactly zero") {
    const Grid g = unit_grid(24, 40);
    const VelocityField vec =
        from_streamfunction(g, +[](double x, double y) {
            return std::cos(4.0 * std::numbers::pi * x) * std::sin(std::numbers::pi * y);
        });
    const ScalarField d = divergence(g, vec);
    for (double v : d.data()) CHECK(std::abs(v) < 1e-12);
}
