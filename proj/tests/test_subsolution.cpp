#include "doctest.h"

#include <cmath>
#include <vector>

#include "layersep/subsolution.hpp"

using namespace layersep;

TEST_CASE("front profile: sheet datum, support, interpolation") {
    const ShearSubsolution s(0.5, 0.5);
    CHECK(s.profile(0.0, 0.5) == 1.0);
    CHECK(s.profile(0.3, -0.5) == 0.0);
    CHECK(s.profile(0.9, -0.5) == 0.0);
    // lambda = 1/2, t = 0.8: ramp width 0.4, profile(0.8, 0.2) = 0.5
    CHECK(s.profile(0.8, 0.2) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(s.profile(1.0, 0.5), HorizonError); // horizon = 1
    CHECK_THROWS_AS(s.profile(-0.1, 0.5), HorizonError);
}

TEST_CASE("momentum flux: wall values, plateau, spot value") {
    const ShearSubsolution s(0.5, 0.5);
    for (double t : {0.1, 0.5, 0.9}) {
        CHECK(s.flux(t, 0.0) == doctest::Approx(-0.25).epsilon(1e-15)); // -lambda/2
        CHECK(s.flux(t, 1.0) == doctest::Approx(0.25).epsilon(1e-15));  // +lambda/2
        CHECK(s.flux(t, 1.0) - s.flux(t, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    }
    CHECK(s.flux(0.8, 0.5) == 0.0); // plateau still covers 1/2
    // lambda = 1/2, t = 0.8, y = 0.2: profile 0.5, flux = -(1/4)(1 - 0.25)
    CHECK(s.flux(0.8, 0.2) == doctest::Approx(-0.1875).epsilon(1e-15));
}

TEST_CASE("energy density: plateau, gap algebra, spot value") {
    const ShearSubsolution s(0.5, 0.5);
    CHECK(s.energy_density(0.8, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
    // where the profile vanishes inside (0,1): e = 1/2 - (eps/2)(1-lambda)
    // and the constraint value is lambda/2; the gap is positive
    const double e0 = 0.5 - 0.5 * 0.5 * 0.5;
    CHECK(s.energy_density(0.9, 1e-12) == doctest::Approx(e0).epsilon(1e-9));
    CHECK(e0 > 0.25);
    // lambda = eps = 1/2, profile = 0.5
    CHECK(s.energy_density(0.8, 0.2) == doctest::Approx(0.40625).epsilon(1e-15));
}

TEST_CASE("admissibility matrix: PSD everywhere, zero on the plateau") {
    const ShearSubsolution s(0.5, 0.5);
    // plateau: both eigenvalues vanish (e = 1/2, stress = 1/2, flux = 0)
    const auto plateau = s.constraint_eigenvalues(0.4, 0.5);
    CHECK(std::abs(plateau[0]) < 1e-15);
    CHECK(std::abs(plateau[1]) < 1e-15);
    // sweep: PSD everywhere, strictly positive off the plateau inside (0,1)
    for (int it = 1; it < 20; ++it)
        for (int iy = 0; iy <= 60; ++iy) {
            const double t = it * 0.05 * s.horizon();
            const double y = -1.0 + 3.0 * iy / 60.0;
            const auto eig = s.constraint_eigenvalues(t, y);
            CHECK(eig[0] >= -1e-12);
            const double a = s.profile(t, y);
            if (y > 0.0 && y < 1.0 && a < 1.0)
                CHECK(eig[0] >= s.admissibility_margin(t, y) - 1e-12);
        }
}

TEST_CASE("transport residual off kinks") {
    for (auto [lambda, eps] : {std::pair{0.5, 0.5}, std::pair{0.25, 0.75}, std::pair{0.9, 0.1}}) {
        const ShearSubsolution s(lambda, eps);
        const ResidualReport rep = residual_check(s, 24, 400);
        CHECK(rep.max_transport_residual <= 1e-8);
        CHECK(rep.min_eigenvalue >= -1e-12);
    }
}

TEST_CASE("rates: closed forms, quadrature, ledger") {
    SUBCASE("lambda = eps = 1/2: r = 1/12, deviation 5/12") {
        const ShearSubsolution s(0.5, 0.5);
        CHECK(s.energy_rate() == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
        CHECK(s.deviation_rate() == doctest::Approx(5.0 / 12.0).epsilon(1e-14));
        const RateReport r = rate_report(s, 0.4);
        CHECK(r.energy_rate_quadrature == doctest::Approx(r.energy_rate_formula).epsilon(1e-6));
        CHECK(r.edge_flux == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(r.front_mass_rate == doctest::Approx(-0.5).epsilon(1e-8));
    }
    SUBCASE("lambda = 3/4, eps = 1/4: r = 1/32") {
        const ShearSubsolution s(0.75, 0.25);
        CHECK(s.energy_rate() == doctest::Approx(1.0 / 32.0).epsilon(1e-15));
        const RateReport r = rate_report(s, 0.3);
        CHECK(r.energy_rate_quadrature == doctest::Approx(1.0 / 32.0).epsilon(1e-6));
    }
    SUBCASE("eps -> 0 flattens the energy") {
        const ShearSubsolution s(0.5, 1e-9);
        CHECK(s.energy_rate() == doctest::Approx(0.0).epsilon(1e-9));
    }
    SUBCASE("deviation rate approaches 1 as lambda -> 1, eps -> 0") {
        const ShearSubsolution s(0.999, 1e-3);
        CHECK(s.deviation_rate() > 0.998);
        CHECK(s.deviation_rate() < 1.0);
    }
    SUBCASE("rate formula at the eps boundary (outside the strict range)") {
        // lambda = 1/2 with the slack parameter at its supremum: the closed
        // form lambda - (2/3) eps lambda (1 - lambda) evaluates to 1/3.
        const double lambda = 0.5, eps = 1.0;
        const double rate = lambda - (2.0 / 3.0) * eps * lambda * (1.0 - lambda);
        CHECK(rate == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
        CHECK_THROWS_AS(ShearSubsolution(lambda, eps), InvalidConfigError);
    }
}

TEST_CASE("energy integral is affine in t") {
    const ShearSubsolution s(0.37, 0.61);
    const double T = s.horizon();
    // least-squares line through 20 samples; residual at machine precision
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = 20;
    std::vector<double> ts, es;
    for (int k = 0; k < n; ++k) {
        const double t = T * (k + 0.5) / (n + 1);
        ts.push_back(t);
        es.push_back(s.energy_integral(t));
        sx += t;
        sy += es.back();
        sxx += t * t;
        sxy += t * es.back();
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double icept = (sy - slope * sx) / n;
    for (int k = 0; k < n; ++k) CHECK(std::abs(es[k] - (icept + slope * ts[k])) < 1e-10);
    CHECK(slope == doctest::Approx(-s.energy_rate()).epsilon(1e-10));
}

TEST_CASE("horizon: ramps meet exactly and evaluation beyond is rejected") {
    for (double lambda : {0.3, 0.5, 0.77}) {
        const ShearSubsolution s(lambda, 0.5);
        const double T = s.horizon();
        CHECK(std::abs(1.0 - 2.0 * lambda * T) <= 1e-15);
        CHECK(s.plateau_length(T * (1.0 - 1e-12)) == doctest::Approx(0.0).epsilon(1e-10));
        CHECK_THROWS_AS(s.plateau_length(T), HorizonError);
    }
}

TEST_CASE("rescaled separation profile") {
    SUBCASE("A = 1 reduces to the deviation profile") {
        const ShearSubsolution s(0.5, 0.5);
        const RescaledSeparation r = rescale_profile(s, 1.0, 0.4);
        CHECK(r.separation == doctest::Approx(s.deviation_profile(0.4)).epsilon(1e-15));
    }
    SUBCASE("frozen constant for lambda = 0.9, eps = 0.1") {
        const ShearSubsolution s(0.9, 0.1);
        const RescaledSeparation r = rescale_profile(s, 2.0, 0.1);
        CHECK(r.C == doctest::Approx(1.788).epsilon(1e-12));
        CHECK(r.C > 0.0);
        CHECK(r.C < 2.0);
    }
    SUBCASE("A^3 scaling at fixed t") {
        const ShearSubsolution s(0.4, 0.3);
        const double t = 0.2;
        const RescaledSeparation r1 = rescale_profile(s, 1.0, t);
        const RescaledSeparation r2 = rescale_profile(s, 2.0, t);
        CHECK(r2.separation == doctest::Approx(8.0 * r1.separation).epsilon(1e-14));
    }
    SUBCASE("horizon shrinks with A") {
        const ShearSubsolution s(0.5, 0.5);
        CHECK_THROWS_AS(rescale_profile(s, 2.0, 0.6), HorizonError); // 1/(2*0.5*2) = 0.5
        CHECK_NOTHROW(rescale_profile(s, 2.0, 0.4));
    }
    SUBCASE("C sweeps toward the endpoints of (0, 2)") {
        const ShearSubsolution lo(0.05, 0.9);
        const ShearSubsolution hi(0.95, 0.05);
        CHECK(rescale_profile(lo, 1.0, 1.0).C < 0.12);
        CHECK(rescale_profile(hi, 1.0, 0.4).C > 1.88);
    }
}
