#include "layersep/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "layersep/timeseries.hpp"

namespace layersep {

double strided_series_integral(const std::vector<double>& ts, const double* vals, int stride,
                               double a, double b) {
    auto val = [&](std::size_t k) { return vals[k * static_cast<std::size_t>(stride)]; };
    auto value_at = [&](double t) {
        auto it = std::upper_bound(ts.begin(), ts.end(), t);
        if (it == ts.begin()) return val(0);
        if (it == ts.end()) return val(ts.size() - 1);
        const std::size_t k = static_cast<std::size_t>(it - ts.begin());
        const double w = (t - ts[k - 1]) / (ts[k] - ts[k - 1]);
        return val(k - 1) * (1.0 - w) + val(k) * w;
    };
    double acc = 0.0;
    double t0 = a, v0 = value_at(a);
    for (std::size_t k = 0; k < ts.size(); ++k) {
        if (ts[k] <= a) continue;
        if (ts[k] >= b) break;
        acc += 0.5 * (v0 + val(k)) * (ts[k] - t0);
        t0 = ts[k];
        v0 = val(k);
    }
    acc += 0.5 * (v0 + value_at(b)) * (b - t0);
    return acc;
}

ParabolicScales initial_scales(double L, double W, double H) {
    if (!(L > 0.0) || !(W > 0.0) || !(H > 0.0))
        throw InvalidConfigError("initial_scales: L, W, H must be positive");
    ParabolicScales s{};
    s.R0 = std::min({std::sqrt(L), 0.5 * W, 0.5 * H});
    const double tol = 1.0 + 1e-12;
    auto find_k = [&](double total, double lo, double hi, double base) {
        // smallest k >= 0 with total / base^k in [lo, hi]
        double size = total;
        for (int k = 0; k <= 60; ++k, size /= base)
            if (size <= hi * tol && size >= lo / tol) return k;
        throw InvalidConfigError("initial_scales: no admissible dyadic split (degenerate box)");
    };
    s.kL = find_k(L, s.R0 * s.R0, 4.0 * s.R0 * s.R0, 4.0);
    s.L0 = L * std::pow(4.0, -s.kL);
    s.kW = find_k(0.5 * W, s.R0, 2.0 * s.R0, 2.0);
    s.W0 = 0.5 * W * std::pow(2.0, -s.kW);
    s.kH = find_k(0.5 * H, s.R0, 2.0 * s.R0, 2.0);
    s.H0 = 0.5 * H * std::pow(2.0, -s.kH);
    return s;
}

Box enlarged_box(const ParabolicCube& c, double L, double H, bool* clipped) {
    Box b{};
    b.t0 = c.t - 2.0 * c.length();
    b.t1 = c.t;
    if (clipped) *clipped = (b.t0 < 0.0) || (b.t1 > L);
    b.t0 = std::max(b.t0, 0.0);
    b.t1 = std::min(b.t1, L);
    b.x0 = c.xc - c.w;
    b.x1 = c.xc + c.w;
    if (c.wall == Wall::bottom) {
        b.y0 = 0.0;
        b.y1 = 2.0 * c.h;
    } else {
        b.y0 = H - 2.0 * c.h;
        b.y1 = H;
    }
    return b;
}

InitialSelection initial_partition(double L, double W, double H, int depth_cap) {
    if (depth_cap < 1) throw InvalidConfigError("initial_partition: depth_cap must be >= 1");
    InitialSelection sel;
    sel.scales = initial_scales(L, W, H);
    sel.L = L;
    sel.W = W;
    sel.H = H;
    sel.depth_cap = depth_cap;
    const ParabolicScales& sc = sel.scales;

    // Cube-count guard: x slots double per generation.
    const double xslots_deepest = std::ldexp(2.0, sc.kW + depth_cap); // 2^(kW+1) * 2^cap
    if (xslots_deepest * 8.0 > 4e6)
        throw InvalidConfigError("initial_partition: depth_cap too deep for this aspect ratio");

    auto emit_band = [&](int gen, int slot_first, int slot_count) {
        const double l = sc.L0 * std::pow(4.0, -gen);
        const double w = sc.W0 * std::pow(2.0, -gen);
        const double h = sc.H0 * std::pow(2.0, -gen);
        const double r = sc.R0 * std::pow(2.0, -gen);
        const int nxs = static_cast<int>(std::llround(W / w));
        for (int m = slot_first; m < slot_first + slot_count; ++m)
            for (int q = 0; q < nxs; ++q)
                for (Wall wall : {Wall::bottom, Wall::top}) {
                    ParabolicCube c;
                    c.gen = gen;
                    c.wall = wall;
                    c.s = m * l;
                    c.t = (m + 1) * l;
                    c.xc = (q + 0.5) * w;
                    c.w = w;
                    c.h = h;
                    c.r = r;
                    c.clipped = (c.s - c.length() < 0.0);
                    sel.cubes.push_back(c);
                }
    };

    // Coarse cubes for t >= L0 (absent when L = L0).
    const long coarse_slots = std::lround(L / sc.L0) - 1;
    if (coarse_slots > 0) emit_band(0, 1, static_cast<int>(coarse_slots));
    // Graded bands toward t = 0; the deepest one includes the slot at t = 0.
    for (int k = 1; k < depth_cap; ++k) emit_band(k, 1, 3);
    emit_band(depth_cap, 0, 4);
    return sel;
}

bool is_suitable(const ParabolicCube& c, const DensityView& density, double c0, double L, double H,
                 double min_cells, double* avg_out) {
    const Box b = enlarged_box(c, L, H);
    if (density.min_cells_per_axis(b) < min_cells - 1e-9) {
        std::ostringstream os;
        os << "suitability: enlarged box of cube gen " << c.gen << " at (s=" << c.s
           << ", xc=" << c.xc << ") resolves fewer than " << min_cells
           << " density cells on some axis";
        throw ResolutionError(os.str());
    }
    const double avg = density.box_average(b, /*wrap_x=*/true);
    if (avg_out) *avg_out = avg;
    return avg <= c0 * std::pow(c.r, -4.0);
}

Decomposition refine(const InitialSelection& sel, const DensityView& density, double c0,
                     const RefineOptions& opt) {
    if (!(c0 > 0.0)) throw InvalidConfigError("refine: c0 must be positive");
    Decomposition out;
    out.scales = sel.scales;
    out.L = sel.L;
    out.W = sel.W;
    out.H = sel.H;
    out.c0 = c0;

    std::deque<ParabolicCube> queue(sel.cubes.begin(), sel.cubes.end());
    std::vector<ParabolicCube> unresolved;
    while (!queue.empty()) {
        ParabolicCube c = queue.front();
        queue.pop_front();
        double avg = 0.0;
        if (is_suitable(c, density, c0, sel.L, sel.H, opt.min_cells, &avg)) {
            c.suit_avg = avg;
            bool clip = false;
            enlarged_box(c, sel.L, sel.H, &clip);
            c.clipped = clip;
            out.cubes.push_back(c);
            continue;
        }
        if (c.gen >= opt.max_generation) {
            c.suit_avg = avg;
            unresolved.push_back(c);
            continue;
        }
        // Dyadic dissection: 4 time slots, 2 horizontal halves; only the
        // wall-attached half of the dissected heights stays a boundary cube.
        const double l = c.length() / 4.0;
        for (int m = 0; m < 4; ++m)
            for (int q = 0; q < 2; ++q) {
                ParabolicCube k;
                k.gen = c.gen + 1;
                k.wall = c.wall;
                k.s = c.s + m * l;
                k.t = c.s + (m + 1) * l;
                k.xc = c.xc + (q == 0 ? -0.25 : 0.25) * c.w;
                k.w = 0.5 * c.w;
                k.h = 0.5 * c.h;
                k.r = 0.5 * c.r;
                k.parent_avg = avg;
                queue.push_back(k);
            }
    }
    if (!unresolved.empty()) {
        std::ostringstream os;
        os << "refine: " << unresolved.size() << " cube(s) still unsuitable at max generation "
           << opt.max_generation << "; first at (s=" << unresolved.front().s
           << ", xc=" << unresolved.front().xc << ", wall "
           << (unresolved.front().wall == Wall::bottom ? "bottom" : "top") << ")";
        throw UnresolvedCubeError(os.str(), std::move(unresolved));
    }
    std::sort(out.cubes.begin(), out.cubes.end(), [](const ParabolicCube& a, const ParabolicCube& b) {
        if (a.wall != b.wall) return a.wall == Wall::bottom;
        if (a.s != b.s) return a.s < b.s;
        return a.xc < b.xc;
    });
    return out;
}

AveragedWallVorticity averaged_wall_vorticity(const Decomposition& d,
                                              const BoundaryVorticityTrace& trace) {
    if (trace.nx < 1 || trace.times.size() < 2)
        throw ResolutionError("averaged_wall_vorticity: trace is empty");
    if (std::abs(trace.period - d.W) > 1e-9 * std::max(1.0, d.W))
        throw ShapeError("averaged_wall_vorticity: trace period does not match decomposition");
    AveragedWallVorticity out;
    out.values.reserve(d.cubes.size());
    const double dxw = trace.period / trace.nx;
    for (const ParabolicCube& c : d.cubes) {
        if (series_samples_in(trace.times, c.s, c.t) < 4)
            throw ResolutionError("averaged_wall_vorticity: fewer than 4 trace samples in a cube");
        const std::vector<double>& rows = (c.wall == Wall::bottom) ? trace.bottom : trace.top;
        double acc = 0.0;
        int count = 0;
        const double lo = c.xc - 0.5 * c.w;
        for (int i = 0; i < trace.nx; ++i) {
            double rel = std::fmod(i * dxw - lo, trace.period);
            if (rel < 0.0) rel += trace.period;
            if (rel >= c.w) continue;
            const double integ =
                strided_series_integral(trace.times, rows.data() + i, trace.nx, c.s, c.t);
            acc += std::abs(integ / c.length());
            ++count;
        }
        if (count == 0)
            throw ResolutionError("averaged_wall_vorticity: no wall samples inside a footprint");
        out.values.push_back(acc / count);
    }
    return out;
}

double AveragedWallVorticity::at(const Decomposition& d, Wall wall, double t, double x) const {
    for (std::size_t k = 0; k < d.cubes.size(); ++k) {
        const ParabolicCube& c = d.cubes[k];
        if (c.wall != wall) continue;
        if (t < c.s || t >= c.t) continue;
        double rel = std::fmod(x - (c.xc - 0.5 * c.w), d.W);
        if (rel < 0.0) rel += d.W;
        if (rel < c.w) return values[k];
    }
    return 0.0;
}

BoundaryStatistic boundary_vorticity_statistic(const Decomposition& d,
                                               const AveragedWallVorticity& avg,
                                               double dissipation_total) {
    if (avg.values.size() != d.cubes.size())
        throw ShapeError("boundary_vorticity_statistic: value/cube mismatch");
    BoundaryStatistic st;
    const double geom_thr =
        std::max(1.0 / (d.W * d.W), 1.0 / (d.H * d.H));
    std::vector<double> vals, meas;
    for (std::size_t k = 0; k < d.cubes.size(); ++k) {
        const ParabolicCube& c = d.cubes[k];
        const double thr =
            std::max(c.s > 0.0 ? 1.0 / c.s : std::numeric_limits<double>::infinity(), geom_thr);
        if (avg.values[k] > thr) {
            vals.push_back(avg.values[k]);
            meas.push_back(c.footprint_measure());
            st.above_measure += c.footprint_measure();
            ++st.above_count;
        }
    }
    st.report = weak_lorentz(vals, meas, 1.5);
    st.lhs = std::pow(st.report.value, 1.5);
    st.rhs = dissipation_total;
    st.ratio = st.rhs > 0.0 ? st.lhs / st.rhs : 0.0;
    return st;
}

LocalVorticityCheck local_vorticity_check(const BoundaryVorticityTrace& trace,
                                          const DensityView& density, Wall wall, double t0,
                                          double x0) {
    if (t0 - 4.0 < -1e-12 || t0 > density.span_t() + 1e-12)
        throw std::out_of_range("local_vorticity_check: window (t0-4, t0) exits the domain");
    if (density.span_y() < 2.0)
        throw std::out_of_range("local_vorticity_check: channel shallower than the unit box");
    LocalVorticityCheck out{0.0, 0.0};
    const double dxw = trace.period / trace.nx;
    const std::vector<double>& rows = (wall == Wall::bottom) ? trace.bottom : trace.top;
    for (int i = 0; i < trace.nx; ++i) {
        double rel = std::fmod(i * dxw - (x0 - 1.0), trace.period);
        if (rel < 0.0) rel += trace.period;
        if (rel >= 2.0) continue;
        out.lhs +=
            std::abs(strided_series_integral(trace.times, rows.data() + i, trace.nx, t0 - 1.0, t0)) *
            dxw;
    }
    Box b{t0 - 4.0, t0, x0 - 2.0, x0 + 2.0, 0.0, 2.0};
    if (wall == Wall::top) {
        b.y0 = density.span_y() - 2.0;
        b.y1 = density.span_y();
    }
    out.c0_local = density.box_integral(b, /*wrap_x=*/true);
    return out;
}

} // namespace layersep
