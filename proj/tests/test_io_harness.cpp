#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "layersep/experiment.hpp"
#include "layersep/field_io.hpp"
#include "layersep/prandtl.hpp"

using namespace layersep;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const char* tag) {
    fs::path p = fs::temp_directory_path() / (std::string("layersep_test_") + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

ExperimentConfig tiny_config(double A) {
    ExperimentConfig cfg;
    cfg.A_list = {A};
    cfg.nu_list = {0.01};
    cfg.resolutions = {{32, 32}};
    cfg.ramp_cells = 4;
    cfg.pert_amplitude = A > 0.0 ? 0.02 : 0.0;
    cfg.seed = 5;
    cfg.t_end = 0.05;
    cfg.dt_max = 2e-3;
    cfg.sample_dt = 0.01;
    return cfg;
}

} // namespace

TEST_CASE("field binary round trip with sidecar") {
    const fs::path dir = temp_dir("fieldio");
    const Grid g(ChannelGeometry(2.0, 1.0), 16, 8);

    ScalarField s(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) s(i, j) = 0.1 * i - 0.7 * j;
    write_scalar(dir / "s.bin", g, s);
    Grid g2;
    const ScalarField s2 = read_scalar(dir / "s.bin", &g2);
    CHECK(g2.nx == g.nx);
    CHECK(g2.geom.W == doctest::Approx(2.0));
    CHECK(s2.data() == s.data());

    VelocityField v(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) v.u(i, j) = i + 100.0 * j;
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) v.v(i, j) = -3.5 * i + j;
    write_velocity(dir / "v.bin", g, v);
    const VelocityField v2 = read_velocity(dir / "v.bin");
    CHECK(v2.u_data() == v.u_data());
    CHECK(v2.v_data() == v.v_data());

    // kind mismatch is a shape error; missing file is a dependency error
    CHECK_THROWS_AS(read_scalar(dir / "v.bin"), ShapeError);
    CHECK_THROWS_AS(read_velocity(dir / "missing.bin"), DependencyError);
}

TEST_CASE("density lattice round trip") {
    const fs::path dir = temp_dir("densio");
    SampledDensity d(4, 6, 5, 0.5, 2.0, 1.0);
    for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 5; ++j)
            for (int i = 0; i < 6; ++i) d.at(k, i, j) = k + 10 * j + 100 * i;
    write_density(dir / "d.bin", d);
    const SampledDensity d2 = read_density(dir / "d.bin");
    CHECK(d2.nt() == 4);
    CHECK(d2.span_x() == doctest::Approx(2.0));
    CHECK(d2.values() == d.values());
}

TEST_CASE("run_case: rest state stays separated by zero") {
    const fs::path dir = temp_dir("rest");
    const CaseResult r = run_case(tiny_config(0.0), 0, dir);
    for (double s : r.record.sep_sq) CHECK(s == 0.0);
    CHECK(r.record.dist0_sq == 0.0);
}

TEST_CASE("run_case: identical config and seed give byte-identical artifacts") {
    const fs::path dir1 = temp_dir("repro1");
    const fs::path dir2 = temp_dir("repro2");
    const ExperimentConfig cfg = tiny_config(1.0);
    run_case(cfg, 0, dir1);
    run_case(cfg, 0, dir2);
    for (const char* name : {"separation.csv", "energy.csv", "trace_bottom.csv", "u_final.bin",
                             "manifest.json"}) {
        CHECK(slurp(dir1 / "case_0" / name) == slurp(dir2 / "case_0" / name));
        CHECK(!slurp(dir1 / "case_0" / name).empty());
    }
}

TEST_CASE("run_case: unperturbed shear separation matches the series oracle") {
    const fs::path dir = temp_dir("oracle_sep");
    ExperimentConfig cfg = tiny_config(1.0);
    cfg.pert_amplitude = 0.0;
    cfg.resolutions = {{16, 128}};
    cfg.ramp_cells = 8;
    cfg.t_end = 0.25;
    cfg.dt_max = 5e-4;
    cfg.sample_dt = 0.05;
    const CaseResult r = run_case(cfg, 0, dir);

    // oracle of the same initial column
    const Grid g(ChannelGeometry(1.0, 1.0), 16, 128);
    const InitialShear init = make_initial_shear(g, 1.0, 8);
    std::vector<double> col(g.ny);
    for (int j = 0; j < g.ny; ++j) col[j] = init.field.u(0, j);
    const prandtl::ShearProfile oracle = prandtl::sine_coefficients(col, 1.0, 0.01, g.ny);

    for (std::size_t k = 0; k < r.record.t.size(); ++k) {
        const double t = r.record.t[k];
        if (t <= 0.0) continue;
        double expected = 0.0; // W * || U(t) - A ||^2 by the midpoint rule
        for (int j = 0; j < g.ny; ++j) {
            const double d = oracle.value(t, g.yc(j)) - 1.0;
            expected += d * d * g.dy;
        }
        CHECK(r.record.sep_sq[k] == doctest::Approx(expected).epsilon(2e-3));
    }
}

TEST_CASE("run_sweep: worker threads reproduce the serial artifacts") {
    const fs::path dir1 = temp_dir("jobs1");
    const fs::path dir2 = temp_dir("jobs2");
    ExperimentConfig cfg = tiny_config(1.0);
    cfg.nu_list = {0.01, 0.02};
    run_sweep(cfg, dir1, 1);
    run_sweep(cfg, dir2, 2);
    for (int c = 0; c < 2; ++c) {
        const std::string base = "case_" + std::to_string(c);
        for (const char* name : {"separation.csv", "u_final.bin"})
            CHECK(slurp(dir1 / base / name) == slurp(dir2 / base / name));
    }
}

TEST_CASE("stored cases reload into equivalent records") {
    const fs::path dir = temp_dir("reload");
    const ExperimentConfig cfg = tiny_config(1.0);
    const CaseResult r = run_case(cfg, 0, dir);
    const StoredCase c = load_case(dir / "case_0", /*with_density=*/false);
    REQUIRE(c.record.t.size() == r.record.t.size());
    for (std::size_t k = 0; k < c.record.t.size(); ++k) {
        CHECK(c.record.t[k] == doctest::Approx(r.record.t[k]).epsilon(1e-15));
        CHECK(c.record.sep_sq[k] == doctest::Approx(r.record.sep_sq[k]).epsilon(1e-15));
    }
    CHECK(c.spec.A == r.spec.A);
    CHECK(c.dist0_sq == doctest::Approx(r.record.dist0_sq).epsilon(1e-15));
}
