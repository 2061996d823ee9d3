#include "layersep/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "layersep/timeseries.hpp"

namespace layersep {

SeparationRecord make_separation_record(const SeparationSeries& s, double dist0_sq, double nu,
                                        double A, double G, double E, double W, double H) {
    SeparationRecord r;
    r.t = s.t;
    r.sep_sq = s.sep_sq;
    r.cum_dissipation = s.cum_dissipation;
    r.wall_int_bottom = s.wall_int_bottom;
    r.wall_int_top = s.wall_int_top;
    r.dist0_sq = dist0_sq;
    r.nu = nu;
    r.A = A;
    r.G = G;
    r.E = E;
    r.W = W;
    r.H = H;
    return r;
}

CombinedBound assemble_combined_bound(const SeparationRecord& r, double t_nu) {
    if (r.t.size() < 2) throw DependencyError("assemble_combined_bound: record is empty");
    CombinedBound b;
    b.t_nu = t_nu;
    const double T = r.T();
    const double sepT = r.sep_sq.back();
    const double cumT = r.cum_dissipation.back();
    b.lhs = 0.5 * sepT + 0.5 * cumT;
    b.initial_term = 2.0 * r.dist0_sq;
    b.shear_diss_term = r.nu * r.G * r.G * T * r.area();
    b.prandtl_term = r.A * r.A * r.area() / r.Re();
    if (T <= t_nu) {
        // Short-run regime: the Prandtl-span estimate covers all of (0, T).
        b.degenerate = true;
        b.rhs = b.initial_term + b.shear_diss_term + b.prandtl_term;
        b.residual = b.rhs - b.lhs;
        return b;
    }
    // G int_{Tnu}^T sep dt by the trapezoid rule on the stored samples.
    b.gronwall_term = r.G * series_integral(r.t, r.sep_sq, t_nu, T);
    const double wb =
        series_value_at(r.t, r.wall_int_bottom, T) - series_value_at(r.t, r.wall_int_bottom, t_nu);
    const double wt =
        series_value_at(r.t, r.wall_int_top, T) - series_value_at(r.t, r.wall_int_top, t_nu);
    b.wall_term = r.A * (std::abs(wb) + std::abs(wt));
    b.rhs = b.initial_term + b.gronwall_term + b.shear_diss_term + b.prandtl_term + b.wall_term;
    b.residual = b.rhs - b.lhs;
    return b;
}

MainBound assemble_main_bound(const SeparationRecord& r) {
    if (r.t.size() < 2) throw DependencyError("assemble_main_bound: record is empty");
    MainBound m;
    const double T = r.T();
    for (std::size_t k = 0; k < r.t.size(); ++k)
        m.lhs_sup = std::max(m.lhs_sup, r.sep_sq[k] + 0.5 * r.cum_dissipation[k]);
    const double Re = r.Re();
    m.exp_factor = std::exp(2.0 * r.G * T);
    m.initial_term = 4.0 * r.dist0_sq;
    m.shear_diss_term = 2.0 * r.nu * r.G * r.G * T * r.area();
    m.log_term_raw = r.A * r.A * r.area() / Re * std::log(2.0 + Re);
    m.energy_term = 2.0 * r.E / Re;
    m.aspect_factor = std::pow(std::max(r.H / r.W, 1.0), 2.0);
    m.a3t_term_raw = r.A * r.A * r.A * T * r.boundary() * m.aspect_factor;
    const double fixed = m.initial_term + m.shear_diss_term + m.energy_term;
    const double variable = m.log_term_raw + m.a3t_term_raw;
    m.fitted_C = variable > 0.0 ? std::max(0.0, (m.lhs_sup / m.exp_factor - fixed) / variable) : 0.0;
    m.rhs_at_fitted_C = m.exp_factor * (fixed + m.fitted_C * variable);
    return m;
}

double trivial_bound_constant(const SeparationRecord& r) {
    if (r.t.empty() || !(r.E > 0.0)) return 0.0;
    return (0.5 * r.sep_sq.back() + r.cum_dissipation.back()) / r.E;
}

SplitBoundaryTerm split_boundary_term(const SeparationRecord& r, const Decomposition& d,
                                      const AveragedWallVorticity& avg, double t_nu) {
    if (avg.values.size() != d.cubes.size())
        throw DependencyError("split_boundary_term: decomposition values missing");
    SplitBoundaryTerm s;
    const double nu = r.nu;
    const double T = r.T();
    const double t0 = t_nu / nu; // rescaled split time
    const double t1 = T / nu;
    const double geom_thr = std::max(1.0 / (d.W * d.W), 1.0 / (d.H * d.H));
    std::vector<double> above_vals, above_meas;
    for (std::size_t k = 0; k < d.cubes.size(); ++k) {
        const ParabolicCube& c = d.cubes[k];
        const double overlap_t = std::max(0.0, std::min(c.t, t1) - std::max(c.s, t0));
        if (overlap_t <= 0.0) continue;
        const double measure = overlap_t * c.w;            // rescaled footprint overlap
        const double contrib = r.A * nu * nu * avg.values[k] * measure; // physical units
        s.total_pairing += contrib;
        const double thr =
            std::max(c.s > 0.0 ? 1.0 / c.s : std::numeric_limits<double>::infinity(), geom_thr);
        if (avg.values[k] > thr) {
            s.above_part += contrib;
            above_vals.push_back(avg.values[k]);            // = nu * averaged vorticity
            above_meas.push_back(nu * nu * measure);        // physical footprint measure
        } else {
            s.remainder_part += contrib;
        }
    }
    s.remainder_closed_form =
        r.A * nu * std::log(T / t_nu) * r.boundary() +
        r.A * nu * nu * std::pow(std::min(r.W, r.H), -2.0) * T * r.boundary();
    s.lorentz_weak32 = weak_lorentz(above_vals, above_meas, 1.5).value;
    s.a_lorentz31 = r.A * std::cbrt(T * r.boundary());
    s.young_constant = (s.lorentz_weak32 > 0.0 && s.a_lorentz31 > 0.0)
                           ? s.above_part / (s.lorentz_weak32 * s.a_lorentz31)
                           : 0.0;
    return s;
}

ScalingFit fit_scaling(const std::vector<ScalingSample>& samples) {
    ScalingFit fit;
    std::vector<const ScalingSample*> nonzero;
    for (const ScalingSample& s : samples)
        if (s.sep_sq > 0.0) nonzero.push_back(&s);
    if (nonzero.size() >= 3) {
        // Least squares for log sep = intercept + a log A + b log T.
        double S[3][3] = {{0}}, rhs[3] = {0};
        for (const ScalingSample* s : nonzero) {
            const double row[3] = {1.0, std::log(s->A), std::log(s->T)};
            const double y = std::log(s->sep_sq);
            for (int i = 0; i < 3; ++i) {
                rhs[i] += row[i] * y;
                for (int j = 0; j < 3; ++j) S[i][j] += row[i] * row[j];
            }
        }
        // Gaussian elimination with partial pivoting on the 3x3 system.
        int piv[3] = {0, 1, 2};
        bool singular = false;
        const double pivot_floor = 1e-12 * nonzero.size();
        for (int c = 0; c < 3 && !singular; ++c) {
            int best = c;
            for (int k2 = c + 1; k2 < 3; ++k2)
                if (std::abs(S[piv[k2]][c]) > std::abs(S[piv[best]][c])) best = k2;
            std::swap(piv[c], piv[best]);
            if (std::abs(S[piv[c]][c]) < pivot_floor) {
                // Degenerate design (fewer than 3 distinct (A, T)); slopes
                // stay at 0 rather than reporting garbage.
                singular = true;
                break;
            }
            for (int k2 = c + 1; k2 < 3; ++k2) {
                const double f = S[piv[k2]][c] / S[piv[c]][c];
                for (int j = c; j < 3; ++j) S[piv[k2]][j] -= f * S[piv[c]][j];
                rhs[piv[k2]] -= f * rhs[piv[c]];
            }
        }
        fit.defined = true;
        if (!singular) {
            double x[3];
            x[2] = rhs[piv[2]] / S[piv[2]][2];
            x[1] = (rhs[piv[1]] - S[piv[1]][2] * x[2]) / S[piv[1]][1];
            x[0] = (rhs[piv[0]] - S[piv[0]][1] * x[1] - S[piv[0]][2] * x[2]) / S[piv[0]][0];
            fit.intercept = x[0];
            fit.exp_A = x[1];
            fit.exp_T = x[2];
        }
    }
    double C = 0.0;
    bool any = false;
    for (const ScalingSample& s : samples) {
        double denom = s.A * s.A * s.A * s.T;
        if (std::isfinite(s.Re) && s.Re > 0.0)
            denom += s.A * s.A / s.Re * std::log(2.0 + s.Re);
        if (denom <= 0.0) continue;
        C = std::max(C, (s.sep_sq - 4.0 * s.dist0_sq) / denom);
        any = any || s.sep_sq > 0.0;
    }
    fit.C = std::max(C, 0.0);
    if (!any) fit.defined = false;
    return fit;
}

} // namespace layersep
