#pragma once

#include <complex>
#include <vector>

#include "layersep/fields.hpp"
#include "layersep/geometry.hpp"

namespace layersep {

/// Transform-diagonalized implicit solvers for the periodic channel:
/// real FFT along the periodic x direction, direct tridiagonal solves in y.
/// Handles the three wall conditions that occur on the staggered grid:
/// cell-center rows with reflected ghosts (u), interior face rows with exact
/// Dirichlet walls (v), and cell-center rows with Neumann walls (pressure).
class SpectralChannel {
public:
    explicit SpectralChannel(const Grid& g);
    ~SpectralChannel();

    SpectralChannel(const SpectralChannel&) = delete;
    SpectralChannel& operator=(const SpectralChannel&) = delete;

    /// Solve (I - a Lap) out = rhs on u samples (ny rows), in place.
    void helmholtz_u(double a, std::vector<double>& u_rows);

    /// Solve (I - a Lap) out = rhs on interior v samples (rows 1..ny-1 of a
    /// (ny+1)-row array), in place. Wall rows are left untouched.
    void helmholtz_v(double a, std::vector<double>& v_rows);

    /// Solve Lap phi = rhs on cell centers with Neumann walls; phi returned
    /// with zero mean. rhs must have zero mean up to rounding (discrete
    /// compatibility), which holds for divergences of admissible MAC fields.
    void poisson_cells(const ScalarField& rhs, ScalarField& phi);

private:
    void forward(const double* rows, int nrows);
    void inverse(double* rows, int nrows);

    Grid grid_;
    int nxh_;
    std::vector<double> kappa_; // symbol of -d2/dx2 per mode
    // FFTW state, kept behind void* so the header stays fftw-free.
    void* plan_fwd_ = nullptr;
    void* plan_inv_ = nullptr;
    double* real_buf_ = nullptr;
    void* cplx_buf_ = nullptr;
    std::vector<std::complex<double>> diag_, rhs_col_;
    std::vector<double> lower_, upper_;
};

/// Discrete Laplacians matching the implicit operators above.
void laplacian_u(const Grid& g, const VelocityField& f, std::vector<double>& out);
void laplacian_v(const Grid& g, const VelocityField& f, std::vector<double>& out);

/// Dirichlet-form dissipation -<w, Lap w> dx dy over both components; the
/// quadrature of ||grad w||^2 that the Crank-Nicolson half steps dissipate
/// exactly.
double dissipation_form(const Grid& g, const VelocityField& f);

} // namespace layersep
