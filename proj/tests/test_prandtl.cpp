#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "layersep/prandtl.hpp"

using namespace layersep;
using namespace layersep::prandtl;

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<double> cell_samples(int n, double H, double (*f)(double)) {
    std::vector<double> s(n);
    for (int j = 0; j < n; ++j) s[j] = f((j + 0.5) * H / n);
    return s;
}
} // namespace

TEST_CASE("sine_coefficients: single mode, zero, constant") {
    const int n = 256;
    const double H = 1.0;
    const auto single = cell_samples(n, H, +[](double y) { return std::sin(std::numbers::pi * y); });
    ShearProfile p = sine_coefficients(single, H, 1.0, 64);
    CHECK(p.coeffs[0] == doctest::Approx(1.0).epsilon(1e-13));
    for (int m = 2; m <= 64; ++m) CHECK(std::abs(p.coeffs[m - 1]) < 1e-12);

    const std::vector<double> zeros(n, 0.0);
    ShearProfile z = sine_coefficients(zeros, H, 1.0, 32);
    for (double b : z.coeffs) CHECK(b == 0.0);

    // Discontinuous constant: low modes approach 4A/(n pi), even modes vanish.
    const double A = 2.0;
    std::vector<double> cst(1024, A);
    ShearProfile c = sine_coefficients(cst, H, 1.0, 16);
    for (int m = 1; m <= 16; ++m) {
        if (m % 2 == 0)
            CHECK(std::abs(c.coeffs[m - 1]) < 1e-12);
        else
            CHECK(c.coeffs[m - 1] == doctest::Approx(4.0 * A / (m * kPi)).epsilon(1e-4));
    }
    // closed-form profile carries the exact continuum coefficients
    ShearProfile cf = constant_profile(A, H, 1.0, 99);
    CHECK(cf.coeffs[0] == doctest::Approx(4.0 * A / kPi).epsilon(1e-15));
    CHECK(cf.coeffs[1] == 0.0);
    CHECK(cf.coeffs[4] == doctest::Approx(4.0 * A / (5.0 * kPi)).epsilon(1e-15));
}

TEST_CASE("sine_coefficients: mode cap errors and Parseval") {
    std::vector<double> s(64, 1.0);
    CHECK_THROWS_AS(sine_coefficients(s, 1.0, 1.0, 65), InvalidConfigError);

    // Band-limited input: Parseval holds to rounding.
    const int n = 128;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> coeffs(20);
    for (double& c : coeffs) c = u(rng);
    std::vector<double> samples(n, 0.0);
    for (int j = 0; j < n; ++j) {
        const double y = (j + 0.5) / n;
        for (int m = 1; m <= 20; ++m) samples[j] += coeffs[m - 1] * std::sin(m * kPi * y);
    }
    ShearProfile p = sine_coefficients(samples, 1.0, 1.0, 64);
    for (int m = 1; m <= 20; ++m) CHECK(p.coeffs[m - 1] == doctest::Approx(coeffs[m - 1]).epsilon(1e-12));
    double sum_sq = 0.0, sample_sq = 0.0;
    for (double c : p.coeffs) sum_sq += c * c;
    for (double v : samples) sample_sq += v * v;
    CHECK(0.5 * sum_sq == doctest::Approx(sample_sq / n).epsilon(1e-12)); // H = 1
    CHECK(p.initial_l2() == doctest::Approx(std::sqrt(sample_sq / n)).epsilon(1e-12));
}

TEST_CASE("evaluate: single mode decay and t = 0 reproduction") {
    ShearProfile p;
    p.H = 2.0;
    p.nu = 0.3;
    p.coeffs = {1.0};
    const double t = 0.7, y = 0.33;
    const double exact = std::exp(-p.nu * kPi * kPi * t / (p.H * p.H)) * std::sin(kPi * y / p.H);
    CHECK(p.value(t, y) == doctest::Approx(exact).epsilon(1e-15));

    const int n = 128;
    const auto samples = cell_samples(n, 1.0, +[](double y2) { return y2 * (1.0 - y2); });
    ShearProfile q = sine_coefficients(samples, 1.0, 1.0, n);
    for (int j = 0; j < n; j += 17)
        CHECK(q.value(0.0, (j + 0.5) / n) == doctest::Approx(samples[j]).epsilon(1e-10));
}

TEST_CASE("evaluate_gradient agrees with an independent heat-equation FD solver") {
    // Crank-Nicolson reference on a fine grid, discontinuous initial data.
    const double H = 1.0, nu = 0.05, A = 1.0;
    const double t_target = H * H / (100.0 * nu);
    const int n = 4096;
    const double dy = H / (n + 1);
    std::vector<double> v(n, A), vn(n), rhs(n);
    const int steps = 2000;
    const double dt = t_target / steps;
    const double r = nu * dt / (2.0 * dy * dy);
    // Thomas factorization of (I - r D2) with Dirichlet ends.
    std::vector<double> diag(n, 1.0 + 2.0 * r), cp(n);
    for (int s = 0; s < steps; ++s) {
        for (int j = 0; j < n; ++j) {
            const double left = j > 0 ? v[j - 1] : 0.0;
            const double right = j + 1 < n ? v[j + 1] : 0.0;
            rhs[j] = v[j] + r * (left - 2.0 * v[j] + right);
        }
        cp[0] = -r / diag[0];
        vn[0] = rhs[0] / diag[0];
        for (int j = 1; j < n; ++j) {
            const double m = 1.0 / (diag[j] + r * cp[j - 1]);
            cp[j] = -r * m;
            vn[j] = (rhs[j] + r * vn[j - 1]) * m;
        }
        for (int j = n - 2; j >= 0; --j) vn[j] -= cp[j] * vn[j + 1];
        v = vn;
    }
    double fd_grad_max = (v[0] - 0.0) / dy; // one-sided at the wall
    for (int j = 0; j + 1 < n; ++j)
        fd_grad_max = std::max(fd_grad_max, std::abs(v[j + 1] - v[j]) / dy);

    ShearProfile p = constant_profile(A, H, nu, 10000);
    CHECK(p.gradient_reliable(t_target));
    const double series_max = p.max_gradient(t_target);
    CHECK(series_max == doctest::Approx(fd_grad_max).epsilon(1e-4));
}

TEST_CASE("lipschitz decay bound") {
    SUBCASE("single mode, large nu t: exponential lhs far below algebraic rhs") {
        ShearProfile p;
        p.H = 1.0;
        p.nu = 1.0;
        p.coeffs = {1.0};
        const DecayCheck c = lipschitz_decay_check(p, 5.0);
        CHECK(c.lhs < 1e-6 * c.rhs);
        CHECK(c.lhs <= c.rhs);
    }
    SUBCASE("frozen spot value for the constant profile") {
        ShearProfile p = constant_profile(1.0, 1.0, 1.0, 10000);
        const DecayCheck c = lipschitz_decay_check(p, 0.01);
        // ||v0|| of the truncated series is 1 up to the mode-10^4 tail
        CHECK(c.rhs == doctest::Approx(0.5 * std::pow(0.01, -0.75) * p.initial_l2()).epsilon(1e-13));
        CHECK(c.rhs == doctest::Approx(15.8113883).epsilon(1e-4));
        CHECK(c.lhs <= c.rhs);
    }
    SUBCASE("scaling by c scales both sides exactly") {
        ShearProfile p;
        p.H = 1.0;
        p.nu = 0.2;
        p.coeffs = {0.3, -0.1, 0.05};
        const DecayCheck a = lipschitz_decay_check(p, 0.13);
        for (double& b : p.coeffs) b *= -4.0;
        const DecayCheck b = lipschitz_decay_check(p, 0.13);
        CHECK(b.lhs == doctest::Approx(4.0 * a.lhs).epsilon(1e-14));
        CHECK(b.rhs == doctest::Approx(4.0 * a.rhs).epsilon(1e-14));
    }
    SUBCASE("t = 0 is rejected") {
        ShearProfile p = constant_profile(1.0, 1.0, 1.0, 100);
        CHECK_THROWS(lipschitz_decay_check(p, 0.0));
    }
}

TEST_CASE("series bound: frozen values and domain error") {
    const SeriesBound s1 = series_bound_check(1.0);
    CHECK(s1.sum == doctest::Approx(0.44225).epsilon(1e-4 / 0.44225));
    CHECK(s1.sum < s1.bound);
    CHECK(s1.bound == 1.0);

    const SeriesBound s50 = series_bound_check(50.0);
    CHECK(s50.sum == doctest::Approx(std::exp(-50.0)).epsilon(1e-6));
    CHECK(s50.sum < s50.bound);

    const SeriesBound s001 = series_bound_check(0.01);
    CHECK(s001.sum < 1000.0);
    CHECK(s001.bound == doctest::Approx(1000.0).epsilon(1e-12));

    CHECK_THROWS(series_bound_check(0.0));
    CHECK_THROWS(series_bound_check(-1.0));
}

TEST_CASE("prandtl horizon: scalings, spot value, snapping") {
    const double E = 1.0, bdry = 2.0, nu = 0.01, T = 1.0;
    const Horizon h = prandtl_horizon(E, bdry, nu, T);
    CHECK(h.t_star == doctest::Approx(3.6067e-9).epsilon(1e-3));

    CHECK(prandtl_horizon(E, bdry, 2.0 * nu, T).t_star == doctest::Approx(8.0 * h.t_star).epsilon(1e-12));
    CHECK(prandtl_horizon(2.0 * E, bdry, nu, T).t_star == doctest::Approx(0.25 * h.t_star).epsilon(1e-12));

    CHECK(!h.degenerate);
    CHECK(h.t_snapped <= h.t_star * (1.0 + 1e-12));
    CHECK(h.t_snapped >= 0.25 * h.t_star * (1.0 - 1e-12));
    CHECK(h.t_snapped == doctest::Approx(std::pow(4.0, -h.k) * T).epsilon(1e-12));

    const Horizon deg = prandtl_horizon(E, bdry, nu, 1e-12);
    CHECK(deg.degenerate);
    CHECK(deg.t_snapped == 1e-12);

    const TimespanBudget budget = timespan_budget(h, E, bdry, nu);
    CHECK(budget.lhs <= budget.budget);
    CHECK(budget.budget == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("oracle property: series satisfies the discrete heat residual") {
    // d/dt v - nu d2/dy2 v = 0 at interior collocation points, probed by
    // centered finite differences of the evaluator itself.
    ShearProfile p;
    p.H = 1.3;
    p.nu = 0.07;
    p.coeffs = {0.8, -0.3, 0.15, 0.05, -0.02};
    const double ht = 1e-5, hy = 1e-4;
    for (double t : {0.05, 0.4, 1.7})
        for (int k = 1; k < 10; ++k) {
            const double y = p.H * k / 10.0;
            const double vt = (p.value(t + ht, y) - p.value(t - ht, y)) / (2.0 * ht);
            const double vyy =
                (p.value(t, y + hy) - 2.0 * p.value(t, y) + p.value(t, y - hy)) / (hy * hy);
            CHECK(std::abs(vt - p.nu * vyy) < 5e-6);
        }
}

TEST_CASE("lemma suites: decay for random profiles, series over a log grid") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> upos(0.1, 3.0);
    int violations = 0;
    for (int trial = 0; trial < 25; ++trial) {
        ShearProfile p;
        p.H = upos(rng);
        p.nu = upos(rng);
        const int modes = 1 + static_cast<int>(31 * (0.5 + 0.5 * u(rng)));
        p.coeffs.resize(modes);
        for (double& b : p.coeffs) b = u(rng);
        for (int it = 0; it < 10; ++it) {
            const double t = std::pow(10.0, -4.0 + 6.0 * it / 9.0) * p.H * p.H / p.nu;
            const DecayCheck c = lipschitz_decay_check(p, t);
            if (c.lhs > c.rhs) ++violations;
        }
    }
    CHECK(violations == 0);

    for (int k = 0; k < 61; ++k) {
        const double z = std::pow(10.0, -3.0 + 6.0 * k / 60.0);
        const SeriesBound s = series_bound_check(z);
        CHECK(s.sum < s.bound);
    }
}
