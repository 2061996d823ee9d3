#include "layersep/density.hpp"

#include <algorithm>

namespace layersep {

void SampledDensity::build_prefix() const {
    const std::size_t pnx = nx_ + 1, pny = ny_ + 1, pnt = nt_ + 1;
    prefix_.assign(pnt * pny * pnx, 0.0);
    auto P = [&](int k, int j, int i) -> double& {
        return prefix_[(static_cast<std::size_t>(k) * pny + j) * pnx + i];
    };
    const double cv = cell_dt() * cell_dx() * cell_dy();
    for (int k = 1; k <= nt_; ++k)
        for (int j = 1; j <= ny_; ++j) {
            double row = 0.0;
            for (int i = 1; i <= nx_; ++i) {
                row += values_[idx(k - 1, i - 1, j - 1)] * cv;
                P(k, j, i) = row + P(k - 1, j, i) + P(k, j - 1, i) - P(k - 1, j - 1, i);
            }
        }
    dirty_ = false;
}

double SampledDensity::cumulative(double t, double x, double y) const {
    // Clamp implements the zero extension.
    t = std::clamp(t, 0.0, T_);
    x = std::clamp(x, 0.0, W_);
    y = std::clamp(y, 0.0, H_);
    const double ft = t / cell_dt(), fx = x / cell_dx(), fy = y / cell_dy();
    const int k = std::min(static_cast<int>(ft), nt_ - 1);
    const int i = std::min(static_cast<int>(fx), nx_ - 1);
    const int j = std::min(static_cast<int>(fy), ny_ - 1);
    const double at = ft - k, ax = fx - i, ay = fy - j;
    const std::size_t pnx = nx_ + 1, pny = ny_ + 1;
    auto P = [&](int kk, int jj, int ii) {
        return prefix_[(static_cast<std::size_t>(kk) * pny + jj) * pnx + ii];
    };
    double out = 0.0;
    for (int dk = 0; dk <= 1; ++dk) {
        const double wt = dk ? at : 1.0 - at;
        if (wt == 0.0) continue;
        for (int dj = 0; dj <= 1; ++dj) {
            const double wy = dj ? ay : 1.0 - ay;
            if (wy == 0.0) continue;
            for (int di = 0; di <= 1; ++di) {
                const double wx = di ? ax : 1.0 - ax;
                if (wx == 0.0) continue;
                out += wt * wy * wx * P(k + dk, j + dj, i + di);
            }
        }
    }
    return out;
}

double SampledDensity::integral_no_wrap(const Box& b) const {
    if (b.t1 <= b.t0 || b.x1 <= b.x0 || b.y1 <= b.y0) return 0.0;
    auto F = [&](double t, double x, double y) { return cumulative(t, x, y); };
    return F(b.t1, b.x1, b.y1) - F(b.t0, b.x1, b.y1) - F(b.t1, b.x0, b.y1) - F(b.t1, b.x1, b.y0) +
           F(b.t0, b.x0, b.y1) + F(b.t0, b.x1, b.y0) + F(b.t1, b.x0, b.y0) - F(b.t0, b.x0, b.y0);
}

double SampledDensity::box_integral(const Box& b, bool wrap_x) const {
    if (dirty_) build_prefix();
    if (!wrap_x) return integral_no_wrap(b);
    double x0 = b.x0, x1 = b.x1;
    if (x1 - x0 >= W_) return integral_no_wrap({b.t0, b.t1, 0.0, W_, b.y0, b.y1});
    // Fold the interval into [0, W): at most two segments.
    x0 -= std::floor(x0 / W_) * W_;
    x1 = x0 + (b.x1 - b.x0);
    if (x1 <= W_) return integral_no_wrap({b.t0, b.t1, x0, x1, b.y0, b.y1});
    return integral_no_wrap({b.t0, b.t1, x0, W_, b.y0, b.y1}) +
           integral_no_wrap({b.t0, b.t1, 0.0, x1 - W_, b.y0, b.y1});
}

double SampledDensity::min_cells_per_axis(const Box& b) const {
    const double ct = (b.t1 - b.t0) / cell_dt();
    const double cx = (b.x1 - b.x0) / cell_dx();
    const double cy = (b.y1 - b.y0) / cell_dy();
    return std::min({ct, cx, cy});
}

double SampledDensity::value_at(double t, double x, double y) const {
    if (t < 0.0 || t > T_ || x < 0.0 || x > W_ || y < 0.0 || y > H_) return 0.0;
    const int k = std::min(static_cast<int>(t / cell_dt()), nt_ - 1);
    const int i = std::min(static_cast<int>(x / cell_dx()), nx_ - 1);
    const int j = std::min(static_cast<int>(y / cell_dy()), ny_ - 1);
    return values_[idx(k, i, j)];
}

} // namespace layersep
