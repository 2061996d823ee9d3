#include "layersep/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace layersep {

namespace {
constexpr double kPi = std::numbers::pi;

double quintic_smoothstep(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}
} // namespace

ComparisonShear uniform_shear(const Grid& g, double A) {
    ComparisonShear s{VelocityField(g), A, A};
    for (double& x : s.field.u_data()) x = A;
    return s;
}

ComparisonShear profile_shear(const Grid& g, const std::vector<double>& U_cells, double u_bottom,
                              double u_top) {
    if (static_cast<int>(U_cells.size()) != g.ny)
        throw ShapeError("profile_shear: need one sample per cell row");
    ComparisonShear s{VelocityField(g), u_bottom, u_top};
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) s.field.u(i, j) = U_cells[j];
    return s;
}

InitialShear make_initial_shear(const Grid& g, double A, int ramp_cells,
                                const PerturbationSpec& pert) {
    if (ramp_cells < 2) throw InvalidConfigError("make_initial_shear: ramp_cells must be >= 2");
    if (2 * ramp_cells > g.ny)
        throw InvalidConfigError("make_initial_shear: ramp wider than half the channel");

    InitialShear out{VelocityField(g), 0.0};
    const double ramp = ramp_cells * g.dy;
    for (int j = 0; j < g.ny; ++j) {
        const double y = g.yc(j);
        const double s = quintic_smoothstep(y / ramp) * quintic_smoothstep((g.geom.H - y) / ramp);
        for (int i = 0; i < g.nx; ++i) out.field.u(i, j) = A * s;
    }

    if (pert.amplitude > 0.0) {
        if (pert.k_min < 1 || pert.k_max < pert.k_min)
            throw InvalidConfigError("make_initial_shear: bad perturbation band");
        // Streamfunction supported away from the walls; u = d psi/dy,
        // v = -d psi/dx taken with the MAC difference stencils so the
        // injected field is discretely divergence free.
        std::mt19937_64 rng(pert.seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        const int nmodes = pert.k_max - pert.k_min + 1;
        std::vector<double> ac(nmodes), as(nmodes), bc(nmodes), bs(nmodes);
        for (int m = 0; m < nmodes; ++m) {
            ac[m] = gauss(rng);
            as[m] = gauss(rng);
            bc[m] = gauss(rng);
            bs[m] = gauss(rng);
        }
        const double y0 = 0.15 * g.geom.H, y1 = 0.85 * g.geom.H, wy = 0.1 * g.geom.H;
        auto envelope = [&](double y) {
            return quintic_smoothstep((y - y0) / wy) * quintic_smoothstep((y1 - y) / wy);
        };
        // psi at cell corners (i, j), j = 0..ny.
        std::vector<double> psi(static_cast<std::size_t>(g.nx) * (g.ny + 1), 0.0);
        for (int j = 0; j <= g.ny; ++j) {
            const double y = g.yf(j);
            const double env = envelope(y);
            if (env == 0.0) continue;
            const double wig1 = std::sin(kPi * (y - y0) / (y1 - y0));
            const double wig2 = std::sin(2.0 * kPi * (y - y0) / (y1 - y0));
            for (int i = 0; i < g.nx; ++i) {
                const double x = g.xf(i);
                double s = 0.0;
                for (int m = 0; m < nmodes; ++m) {
                    const double arg = 2.0 * kPi * (pert.k_min + m) * x / g.geom.W;
                    s += wig1 * (ac[m] * std::cos(arg) + as[m] * std::sin(arg));
                    s += wig2 * (bc[m] * std::cos(arg) + bs[m] * std::sin(arg));
                }
                psi[static_cast<std::size_t>(j) * g.nx + i] = env * s;
            }
        }
        VelocityField noise(g);
        auto psi_at = [&](int i, int j) { return psi[static_cast<std::size_t>(j) * g.nx + i]; };
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                noise.u(i, j) = (psi_at(i, j + 1) - psi_at(i, j)) / g.dy;
        for (int j = 1; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const int ip = (i + 1 == g.nx) ? 0 : i + 1;
                noise.v(i, j) = -(psi_at(ip, j) - psi_at(i, j)) / g.dx;
            }
        const double m = max_speed(noise);
        if (m > 0.0) {
            const double scalef = pert.amplitude / m;
            for (double& x : noise.u_data()) x *= scalef;
            for (double& x : noise.v_data()) x *= scalef;
            for (std::size_t k = 0; k < out.field.u_data().size(); ++k)
                out.field.u_data()[k] += noise.u_data()[k];
            for (std::size_t k = 0; k < out.field.v_data().size(); ++k)
                out.field.v_data()[k] += noise.v_data()[k];
        }
    }

    out.field.enforce_wall_rows();
    out.dist_sq_to_shear = l2_distance_sq_to_uniform(g, out.field, A);
    return out;
}

// ---------------------------------------------------------------------------
// ChannelSolver
// ---------------------------------------------------------------------------

ChannelSolver::ChannelSolver(const Grid& g, const SolverConfig& cfg)
    : grid_(g), cfg_(cfg), u_(g), div_(g), phi_(g) {
    cfg_.validate();
    spectral_ = std::make_unique<SpectralChannel>(g);
}

void ChannelSolver::set_state(const VelocityField& u, double t) {
    if (u.nx() != grid_.nx || u.ny() != grid_.ny)
        throw ShapeError("ChannelSolver::set_state: field does not match grid");
    u_ = u;
    u_.enforce_wall_rows();
    t_ = t;
    steps_ = 0;
    cum_diss_ = 0.0;
    wall_int_bottom_ = 0.0;
    wall_int_top_ = 0.0;
}

void ChannelSolver::advection(const VelocityField& f, std::vector<double>& nu_out,
                              std::vector<double>& nv_out) const {
    const int nx = grid_.nx, ny = grid_.ny;
    const double idx = 1.0 / grid_.dx, idy = 1.0 / grid_.dy;
    nu_out.assign(static_cast<std::size_t>(nx) * ny, 0.0);
    nv_out.assign(static_cast<std::size_t>(nx) * (ny + 1), 0.0);

    // Divergence form with two-point means (energy conserving for
    // discretely divergence-free fields).
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const int ip = (i + 1 == nx) ? 0 : i + 1;
            const int im = (i == 0) ? nx - 1 : i - 1;
            const double uce = 0.5 * (f.u(i, j) + f.u(ip, j));
            const double ucw = 0.5 * (f.u(im, j) + f.u(i, j));
            double flux = (uce * uce - ucw * ucw) * idx;
            // corner fluxes v*u at (i, j) and (i, j+1); both factors vanish
            // on the walls
            double fn = 0.0, fs = 0.0;
            if (j + 1 < ny) {
                const double vbar = 0.5 * (f.v(im, j + 1) + f.v(i, j + 1));
                const double ubar = 0.5 * (f.u(i, j) + f.u(i, j + 1));
                fn = vbar * ubar;
            }
            if (j > 0) {
                const double vbar = 0.5 * (f.v(im, j) + f.v(i, j));
                const double ubar = 0.5 * (f.u(i, j - 1) + f.u(i, j));
                fs = vbar * ubar;
            }
            flux += (fn - fs) * idy;
            nu_out[static_cast<std::size_t>(j) * nx + i] = flux;
        }

    for (int j = 1; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const int ip = (i + 1 == nx) ? 0 : i + 1;
            const int im = (i == 0) ? nx - 1 : i - 1;
            // corner products u*v at (i, j) and (i+1, j)
            const double ucl = 0.5 * (f.u(i, j - 1) + f.u(i, j));
            const double vcl = 0.5 * (f.v(im, j) + f.v(i, j));
            const double ucr = 0.5 * (f.u(ip, j - 1) + f.u(ip, j));
            const double vcr = 0.5 * (f.v(i, j) + f.v(ip, j));
            double flux = (ucr * vcr - ucl * vcl) * idx;
            const double vcn = 0.5 * (f.v(i, j) + f.v(i, j + 1));
            const double vcs = 0.5 * (f.v(i, j - 1) + f.v(i, j));
            flux += (vcn * vcn - vcs * vcs) * idy;
            nv_out[static_cast<std::size_t>(j) * nx + i] = flux;
        }
}

void ChannelSolver::project() {
    div_ = divergence(grid_, u_);
    spectral_->poisson_cells(div_, phi_);
    const VelocityField grad = face_gradient(grid_, phi_);
    for (std::size_t k = 0; k < u_.u_data().size(); ++k) u_.u_data()[k] -= grad.u_data()[k];
    for (std::size_t k = 0; k < u_.v_data().size(); ++k) u_.v_data()[k] -= grad.v_data()[k];
    u_.enforce_wall_rows();
}

void ChannelSolver::check_finite() const {
    double s = 0.0;
    for (double x : u_.u_data()) s += x;
    for (double x : u_.v_data()) s += x;
    if (!std::isfinite(s))
        throw BlowUpError("ChannelSolver: non-finite velocity detected", steps_);
}

double ChannelSolver::step(double dt_cap) {
    const int nx = grid_.nx, ny = grid_.ny;
    double umax = 0.0, vmax = 0.0;
    for (double x : u_.u_data()) umax = std::max(umax, std::abs(x));
    for (double x : u_.v_data()) vmax = std::max(vmax, std::abs(x));
    double dt = cfg_.dt_max;
    if (umax > 1e-14) dt = std::min(dt, cfg_.cfl * grid_.dx / umax);
    if (vmax > 1e-14) dt = std::min(dt, cfg_.cfl * grid_.dy / vmax);
    dt = std::min(dt, dt_cap);
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw BlowUpError("ChannelSolver: invalid time step", steps_);

    const double a = 0.5 * cfg_.nu * dt;
    laplacian_u(grid_, u_, lapu_);
    laplacian_v(grid_, u_, lapv_);
    advection(u_, n1u_, n1v_);

    const VelocityField u0 = u_;

    // Stage 1: predictor with stage advection N(u0).
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const std::size_t m = static_cast<std::size_t>(j) * nx + i;
            u_.u_data()[m] = u0.u_data()[m] + dt * (-n1u_[m]) + a * lapu_[m];
        }
    for (int j = 1; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const std::size_t m = static_cast<std::size_t>(j) * nx + i;
            u_.v_data()[m] = u0.v_data()[m] + dt * (-n1v_[m]) + a * lapv_[m];
        }
    spectral_->helmholtz_u(a, u_.u_data());
    spectral_->helmholtz_v(a, u_.v_data());
    u_.enforce_wall_rows();
    project();

    // Stage 2: corrector with averaged advection.
    advection(u_, n2u_, n2v_);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const std::size_t m = static_cast<std::size_t>(j) * nx + i;
            u_.u_data()[m] = u0.u_data()[m] + dt * (-0.5 * (n1u_[m] + n2u_[m])) + a * lapu_[m];
        }
    for (int j = 1; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const std::size_t m = static_cast<std::size_t>(j) * nx + i;
            u_.v_data()[m] = u0.v_data()[m] + dt * (-0.5 * (n1v_[m] + n2v_[m])) + a * lapv_[m];
        }
    spectral_->helmholtz_u(a, u_.u_data());
    spectral_->helmholtz_v(a, u_.v_data());
    u_.enforce_wall_rows();
    project();

    t_ += dt;
    ++steps_;
    check_finite();
    return dt;
}

double ChannelSolver::dissipation_rate() const { return cfg_.nu * dissipation_form(grid_, u_); }

double ChannelSolver::wall_vorticity_integral(Wall w) const {
    const std::vector<double> wv = wall_vorticity(grid_, u_, w);
    double s = 0.0;
    for (double x : wv) s += x;
    return cfg_.nu * s * grid_.dx;
}

RunResult ChannelSolver::run(const RecordingConfig& rec) {
    RunResult out;
    out.trace.nx = grid_.nx;
    out.trace.period = grid_.geom.W;
    const double t_end = cfg_.t_end;
    const double sample_dt = rec.sample_dt > 0.0 ? rec.sample_dt : t_end / 512.0;

    int density_nt = 0;
    if (rec.density_dt > 0.0) {
        density_nt = static_cast<int>(std::llround(t_end / rec.density_dt));
        if (density_nt < 1) throw InvalidConfigError("run: density_dt larger than t_end");
        const int cx = rec.density_coarsen_x, cy = rec.density_coarsen_y;
        if (grid_.nx % cx != 0 || grid_.ny % cy != 0)
            throw InvalidConfigError("run: density coarsening must divide the grid");
        out.density.emplace(density_nt, grid_.nx / cx, grid_.ny / cy, t_end, grid_.geom.W,
                            grid_.geom.H);
    }

    std::vector<double> snapshot_times = rec.snapshot_times;
    std::sort(snapshot_times.begin(), snapshot_times.end());
    std::size_t next_snapshot = 0;

    auto record_ledger = [&]() {
        out.ledger.t.push_back(t_);
        out.ledger.kinetic.push_back(kinetic_energy(grid_, u_));
        out.ledger.dissipation_rate.push_back(dissipation_rate());
        out.ledger.cumulative.push_back(cum_diss_);
    };
    auto record_trace = [&]() {
        out.trace.times.push_back(t_);
        const std::vector<double> wb = wall_vorticity(grid_, u_, Wall::bottom);
        const std::vector<double> wt = wall_vorticity(grid_, u_, Wall::top);
        out.trace.bottom.insert(out.trace.bottom.end(), wb.begin(), wb.end());
        out.trace.top.insert(out.trace.top.end(), wt.begin(), wt.end());
    };
    auto record_separation = [&]() {
        if (!rec.comparison) return;
        out.separation.t.push_back(t_);
        out.separation.sep_sq.push_back(l2_distance_sq(grid_, u_, rec.comparison->field));
        out.separation.kinetic.push_back(kinetic_energy(grid_, u_));
        out.separation.cum_dissipation.push_back(cum_diss_);
        out.separation.wall_int_bottom.push_back(wall_int_bottom_);
        out.separation.wall_int_top.push_back(wall_int_top_);
    };
    auto record_density_slice = [&](int slice) {
        if (!out.density) return;
        const ScalarField d = dissipation_density(grid_, u_);
        const int cx = rec.density_coarsen_x, cy = rec.density_coarsen_y;
        SampledDensity& lat = *out.density;
        for (int j = 0; j < lat.ny(); ++j)
            for (int i = 0; i < lat.nx(); ++i) {
                double acc = 0.0;
                for (int jj = 0; jj < cy; ++jj)
                    for (int ii = 0; ii < cx; ++ii) acc += d(i * cx + ii, j * cy + jj);
                lat.at(slice, i, j) = acc / (cx * cy);
            }
    };

    record_ledger();
    record_trace();
    record_separation();
    if (next_snapshot < snapshot_times.size() && snapshot_times[next_snapshot] <= 0.0) {
        out.snapshots.emplace_back(t_, u_);
        ++next_snapshot;
    }

    double next_sample = sample_dt;
    int density_slice = 0;
    double next_density = out.density ? 0.5 * rec.density_dt : std::numeric_limits<double>::infinity();

    while (t_ < t_end - 1e-13 * t_end) {
        double dt_cap = t_end - t_;
        dt_cap = std::min(dt_cap, next_sample - t_);
        if (out.density && density_slice < density_nt) dt_cap = std::min(dt_cap, next_density - t_);
        if (next_snapshot < snapshot_times.size())
            dt_cap = std::min(dt_cap, snapshot_times[next_snapshot] - t_);
        dt_cap = std::max(dt_cap, 1e-15 * t_end);

        const double wb0 = wall_vorticity_integral(Wall::bottom);
        const double wt0 = wall_vorticity_integral(Wall::top);
        const VelocityField uprev = u_;
        const double dt = step(dt_cap);

        // Midpoint-rule accumulation of nu ||grad u||^2 dt in the scheme's
        // Dirichlet form (the quantity Crank-Nicolson removes).
        VelocityField umid = uprev;
        for (std::size_t m = 0; m < umid.u_data().size(); ++m)
            umid.u_data()[m] = 0.5 * (umid.u_data()[m] + u_.u_data()[m]);
        for (std::size_t m = 0; m < umid.v_data().size(); ++m)
            umid.v_data()[m] = 0.5 * (umid.v_data()[m] + u_.v_data()[m]);
        cum_diss_ += cfg_.nu * dt * dissipation_form(grid_, umid);

        wall_int_bottom_ += 0.5 * dt * (wb0 + wall_vorticity_integral(Wall::bottom));
        wall_int_top_ += 0.5 * dt * (wt0 + wall_vorticity_integral(Wall::top));

        if (rec.ledger_every_step || steps_ % cfg_.output_stride == 0) record_ledger();
        if (steps_ % cfg_.output_stride == 0) record_trace();

        if (t_ >= next_sample - 1e-12 * t_end) {
            record_separation();
            next_sample += sample_dt;
        }
        if (out.density && density_slice < density_nt && t_ >= next_density - 1e-12 * t_end) {
            record_density_slice(density_slice);
            ++density_slice;
            next_density += rec.density_dt;
        }
        if (next_snapshot < snapshot_times.size() &&
            t_ >= snapshot_times[next_snapshot] - 1e-12 * t_end) {
            out.snapshots.emplace_back(t_, u_);
            ++next_snapshot;
        }
    }
    // Final samples exactly at t_end if the cadences did not land there.
    if (rec.comparison && (out.separation.t.empty() || out.separation.t.back() < t_ - 1e-12))
        record_separation();
    if (out.trace.times.empty() || out.trace.times.back() < t_ - 1e-12) record_trace();
    out.steps = steps_;
    return out;
}

// ---------------------------------------------------------------------------
// Time mollification
// ---------------------------------------------------------------------------

namespace {
// Integral of the piecewise-linear interpolant of (times, values) over [a, b].
double pl_integral(const std::vector<double>& ts, const std::vector<double>& vs, double a,
                   double b) {
    const std::size_t n = ts.size();
    auto value_at = [&](double t) {
        auto it = std::upper_bound(ts.begin(), ts.end(), t);
        if (it == ts.begin()) return vs.front();
        if (it == ts.end()) return vs.back();
        const std::size_t k = static_cast<std::size_t>(it - ts.begin());
        const double w = (t - ts[k - 1]) / (ts[k] - ts[k - 1]);
        return vs[k - 1] * (1.0 - w) + vs[k] * w;
    };
    double acc = 0.0;
    double t0 = a, v0 = value_at(a);
    for (std::size_t k = 0; k < n; ++k) {
        if (ts[k] <= a) continue;
        if (ts[k] >= b) break;
        acc += 0.5 * (v0 + vs[k]) * (ts[k] - t0);
        t0 = ts[k];
        v0 = vs[k];
    }
    acc += 0.5 * (v0 + value_at(b)) * (b - t0);
    return acc;
}
} // namespace

std::vector<double> time_mollify_times(const std::vector<double>& times, double window) {
    if (times.size() < 2) throw InvalidWindowError("time_mollify: need at least two samples");
    if (!(window > 0.0)) throw InvalidWindowError("time_mollify: window must be positive");
    if (window > times.back() - times.front())
        throw InvalidWindowError("time_mollify: window larger than trace span");
    std::vector<double> out;
    for (double t : times)
        if (t >= times.front() + window - 1e-12 * window) out.push_back(t);
    return out;
}

std::vector<double> time_mollify(const std::vector<double>& times,
                                 const std::vector<double>& values, double window) {
    if (times.size() != values.size())
        throw ShapeError("time_mollify: times and values length mismatch");
    const std::vector<double> ts = time_mollify_times(times, window);
    std::vector<double> out;
    out.reserve(ts.size());
    for (double t : ts) out.push_back(pl_integral(times, values, t - window, t) / window);
    return out;
}

// ---------------------------------------------------------------------------
// Energy identity
// ---------------------------------------------------------------------------

EnergyIdentityTerms energy_identity_terms(const Grid& g, const ComparisonShear& ubar,
                                          const VelocityField& u_prev, const VelocityField& u_mid,
                                          const VelocityField& u_next, double t_prev, double t_next,
                                          double nu) {
    if (!(t_next > t_prev))
        throw InvalidConfigError("energy_identity_terms: need t_next > t_prev");
    EnergyIdentityTerms r{};
    const double dp = l2_distance_sq(g, u_prev, ubar.field);
    const double dn = l2_distance_sq(g, u_next, ubar.field);
    r.lhs_rate = 0.5 * (dn - dp) / (t_next - t_prev);

    const VelocityGradient gu = gradient(g, u_mid);
    const VelocityGradient gb = gradient(g, ubar.field);
    double diss = 0.0, cross = 0.0, transport = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double a = gu.dudx(i, j), b = gu.dudy(i, j), c = gu.dvdx(i, j),
                         e = gu.dvdy(i, j);
            diss += a * a + b * b + c * c + e * e;
            cross += a * gb.dudx(i, j) + b * gb.dudy(i, j) + c * gb.dvdx(i, j) + e * gb.dvdy(i, j);
        }
    // Transport correction -(u - ubar, u . grad ubar); vanishes for constant
    // shear. ubar is x-independent so only (u2) dUbar/dy e1 survives.
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int ip = (i + 1 == g.nx) ? 0 : i + 1;
            const double uc = 0.5 * (u_mid.u(i, j) + u_mid.u(ip, j));
            const double ubc = 0.5 * (ubar.field.u(i, j) + ubar.field.u(ip, j));
            const double vc = 0.5 * (u_mid.v(i, j) + u_mid.v(i, j + 1));
            transport -= (uc - ubc) * vc * gb.dudy(i, j);
        }
    const double vol = g.dx * g.dy;
    r.dissipation_term = -nu * diss * vol + nu * cross * vol + transport * vol;

    // Assumption-free wall stencil: the identity is also probed on
    // comparison states that do not satisfy no-slip.
    const std::vector<double> wb = wall_vorticity_general(g, u_mid, Wall::bottom);
    const std::vector<double> wt = wall_vorticity_general(g, u_mid, Wall::top);
    double bterm = 0.0;
    for (int i = 0; i < g.nx; ++i) {
        bterm += j_of(Wall::bottom, ubar.u_bottom) * nu * wb[i] * g.dx;
        bterm += j_of(Wall::top, ubar.u_top) * nu * wt[i] * g.dx;
    }
    r.boundary_term = -bterm;
    r.residual = r.lhs_rate - (r.dissipation_term + r.boundary_term);
    return r;
}

} // namespace layersep
