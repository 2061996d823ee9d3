#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "layersep/errors.hpp"

namespace layersep {

/// Axis-aligned space-time box (t, x, y).
struct Box {
    double t0, t1, x0, x1, y0, y1;
    double volume() const { return (t1 - t0) * (x1 - x0) * (y1 - y0); }
};

/// Abstract non-negative space-time density over (0,T) x (0,W) x (0,H).
/// Sampled data implements exact piecewise-constant integrals; test densities
/// implement closed forms.
class DensityView {
public:
    virtual ~DensityView() = default;
    virtual double span_t() const = 0;
    virtual double span_x() const = 0;
    virtual double span_y() const = 0;
    /// Integral of the density over the box (zero extension outside the
    /// domain; wrap_x folds the x interval periodically instead).
    virtual double box_integral(const Box& b, bool wrap_x) const = 0;
    /// Smallest number of resolved cells across the three axes of the box;
    /// +infinity for closed-form densities.
    virtual double min_cells_per_axis(const Box& b) const = 0;

    double box_average(const Box& b, bool wrap_x) const {
        const double v = b.volume();
        return v > 0.0 ? box_integral(b, wrap_x) / v : 0.0;
    }
    double total_integral() const {
        return box_integral({0.0, span_t(), 0.0, span_x(), 0.0, span_y()}, false);
    }
};

/// Uniform lattice of cell samples over (0,T) x (0,W) x (0,H), interpreted as
/// piecewise constant per lattice cell. Box integrals are exact for that
/// interpretation: the cumulative integral is trilinear between lattice
/// corners, so arbitrary boxes reduce to eight interpolated corner reads.
class SampledDensity : public DensityView {
public:
    SampledDensity() = default;
    SampledDensity(int nt, int nx, int ny, double T, double W, double H)
        : nt_(nt), nx_(nx), ny_(ny), T_(T), W_(W), H_(H),
          values_(static_cast<std::size_t>(nt) * nx * ny, 0.0) {
        if (nt < 1 || nx < 1 || ny < 1)
            throw InvalidConfigError("SampledDensity: lattice dims must be positive");
        if (!(T > 0.0) || !(W > 0.0) || !(H > 0.0))
            throw InvalidConfigError("SampledDensity: extents must be positive");
    }

    int nt() const { return nt_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double span_t() const override { return T_; }
    double span_x() const override { return W_; }
    double span_y() const override { return H_; }
    double scale() const { return scale_; }

    double& at(int k, int i, int j) {
        dirty_ = true;
        return values_[idx(k, i, j)];
    }
    double at(int k, int i, int j) const { return values_[idx(k, i, j)]; }
    const std::vector<double>& values() const { return values_; }

    /// Multiply every sample by s (used by the unit-viscosity rescale).
    void apply_scale(double s) {
        scale_ *= s;
        for (double& v : values_) v *= s;
        dirty_ = true;
    }

    /// Reinterpret the lattice over new extents (the rescale map keeps the
    /// sample layout, only coordinates change).
    void set_extents(double T, double W, double H) {
        T_ = T;
        W_ = W;
        H_ = H;
    }

    double cell_dt() const { return T_ / nt_; }
    double cell_dx() const { return W_ / nx_; }
    double cell_dy() const { return H_ / ny_; }

    double box_integral(const Box& b, bool wrap_x) const override;
    double min_cells_per_axis(const Box& b) const override;

    /// Value at the lattice cell containing (t, x, y); zero outside.
    double value_at(double t, double x, double y) const;

private:
    std::size_t idx(int k, int i, int j) const {
        return (static_cast<std::size_t>(k) * ny_ + j) * nx_ + i;
    }
    void build_prefix() const;
    double cumulative(double t, double x, double y) const;
    double integral_no_wrap(const Box& b) const;

    int nt_ = 0, nx_ = 0, ny_ = 0;
    double T_ = 1.0, W_ = 1.0, H_ = 1.0;
    double scale_ = 1.0;
    std::vector<double> values_;
    mutable std::vector<double> prefix_; // (nt+1) x (ny+1) x (nx+1)
    mutable bool dirty_ = true;
};

} // namespace layersep
