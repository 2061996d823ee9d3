#include "layersep/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

namespace layersep {

namespace {
// FFTW plan creation is not thread-safe; solver instances may live on
// different threads (one per sweep case).
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

SpectralChannel::SpectralChannel(const Grid& g) : grid_(g), nxh_(g.nx / 2 + 1) {
    kappa_.resize(nxh_);
    for (int k = 0; k < nxh_; ++k) {
        const double s = std::sin(std::numbers::pi * k / g.nx);
        kappa_[k] = 4.0 * s * s / (g.dx * g.dx);
    }
    diag_.resize(g.ny + 1);
    rhs_col_.resize(g.ny + 1);
    lower_.resize(g.ny + 1);
    upper_.resize(g.ny + 1);

    std::lock_guard<std::mutex> lock(planner_mutex());
    real_buf_ = fftw_alloc_real(static_cast<std::size_t>(g.nx) * (g.ny + 1));
    auto* cbuf = fftw_alloc_complex(static_cast<std::size_t>(nxh_) * (g.ny + 1));
    cplx_buf_ = cbuf;
    const int n[] = {g.nx};
    plan_fwd_ = fftw_plan_many_dft_r2c(1, n, g.ny + 1, real_buf_, nullptr, 1, g.nx, cbuf,
                                       nullptr, 1, nxh_, FFTW_ESTIMATE);
    plan_inv_ = fftw_plan_many_dft_c2r(1, n, g.ny + 1, cbuf, nullptr, 1, nxh_, real_buf_,
                                       nullptr, 1, g.nx, FFTW_ESTIMATE);
}

SpectralChannel::~SpectralChannel() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
    fftw_free(real_buf_);
    fftw_free(static_cast<fftw_complex*>(cplx_buf_));
}

void SpectralChannel::forward(const double* rows, int nrows) {
    const std::size_t count = static_cast<std::size_t>(grid_.nx) * nrows;
    std::copy(rows, rows + count, real_buf_);
    std::fill(real_buf_ + count, real_buf_ + static_cast<std::size_t>(grid_.nx) * (grid_.ny + 1), 0.0);
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
}

void SpectralChannel::inverse(double* rows, int nrows) {
    fftw_execute(static_cast<fftw_plan>(plan_inv_));
    const double scale = 1.0 / grid_.nx;
    const std::size_t count = static_cast<std::size_t>(grid_.nx) * nrows;
    for (std::size_t m = 0; m < count; ++m) rows[m] = real_buf_[m] * scale;
}

namespace {

using cplx = std::complex<double>;

// Thomas solve along a strided complex column; diag/upper/lower prepared by
// the caller, rhs in place. No pivoting: all systems here are strictly
// diagonally dominant or pinned.
void thomas(int n, const double* lower, std::vector<cplx>& diag_scratch, const double* upper,
            cplx* rhs, int stride) {
    for (int j = 1; j < n; ++j) {
        const cplx m = lower[j] / diag_scratch[j - 1];
        diag_scratch[j] -= m * upper[j - 1];
        rhs[static_cast<std::size_t>(j) * stride] -= m * rhs[static_cast<std::size_t>(j - 1) * stride];
    }
    rhs[static_cast<std::size_t>(n - 1) * stride] /= diag_scratch[n - 1];
    for (int j = n - 2; j >= 0; --j) {
        rhs[static_cast<std::size_t>(j) * stride] =
            (rhs[static_cast<std::size_t>(j) * stride] -
             upper[j] * rhs[static_cast<std::size_t>(j + 1) * stride]) /
            diag_scratch[j];
    }
}

} // namespace

void SpectralChannel::helmholtz_u(double a, std::vector<double>& u_rows) {
    const int ny = grid_.ny;
    const double idy2 = 1.0 / (grid_.dy * grid_.dy);
    forward(u_rows.data(), ny);
    auto* c = static_cast<fftw_complex*>(cplx_buf_);
    auto* cc = reinterpret_cast<cplx*>(c);
    for (int k = 0; k < nxh_; ++k) {
        const double base = 1.0 + a * kappa_[k];
        for (int j = 0; j < ny; ++j) {
            // Reflected ghost row at each wall: Lap u |_wall = (u1 - 3 u0)/dy^2.
            const bool wall = (j == 0 || j == ny - 1);
            diag_[j] = base + (wall ? 3.0 : 2.0) * a * idy2;
            lower_[j] = -a * idy2;
            upper_[j] = -a * idy2;
        }
        thomas(ny, lower_.data(), diag_, upper_.data(), cc + k, nxh_);
    }
    inverse(u_rows.data(), ny);
}

void SpectralChannel::helmholtz_v(double a, std::vector<double>& v_rows) {
    const int ny = grid_.ny;
    const int rows = ny - 1;
    const double idy2 = 1.0 / (grid_.dy * grid_.dy);
    forward(v_rows.data() + grid_.nx, rows);
    auto* cc = reinterpret_cast<cplx*>(static_cast<fftw_complex*>(cplx_buf_));
    for (int k = 0; k < nxh_; ++k) {
        const double base = 1.0 + a * kappa_[k];
        for (int j = 0; j < rows; ++j) {
            diag_[j] = base + 2.0 * a * idy2;
            lower_[j] = -a * idy2;
            upper_[j] = -a * idy2;
        }
        thomas(rows, lower_.data(), diag_, upper_.data(), cc + k, nxh_);
    }
    inverse(v_rows.data() + grid_.nx, rows);
}

void SpectralChannel::poisson_cells(const ScalarField& rhs, ScalarField& phi) {
    const int ny = grid_.ny;
    const double idy2 = 1.0 / (grid_.dy * grid_.dy);
    forward(rhs.data().data(), ny);
    auto* cc = reinterpret_cast<cplx*>(static_cast<fftw_complex*>(cplx_buf_));
    for (int k = 0; k < nxh_; ++k) {
        if (k == 0) {
            // Neumann-Neumann mode is singular; pin the first cell and
            // remove the mean afterwards.
            diag_[0] = 1.0;
            upper_[0] = 0.0;
            cc[0] = 0.0;
            for (int j = 1; j < ny; ++j) {
                const bool wall = (j == ny - 1);
                diag_[j] = -(wall ? 1.0 : 2.0) * idy2;
                lower_[j] = idy2;
                upper_[j] = idy2;
            }
            thomas(ny, lower_.data(), diag_, upper_.data(), cc, nxh_);
            continue;
        }
        for (int j = 0; j < ny; ++j) {
            const bool wall = (j == 0 || j == ny - 1);
            diag_[j] = -kappa_[k] - (wall ? 1.0 : 2.0) * idy2;
            lower_[j] = idy2;
            upper_[j] = idy2;
        }
        thomas(ny, lower_.data(), diag_, upper_.data(), cc + k, nxh_);
    }
    if (phi.nx() != grid_.nx || phi.ny() != grid_.ny) phi = ScalarField(grid_);
    inverse(phi.data().data(), ny);
    double mean = 0.0;
    for (double x : phi.data()) mean += x;
    mean /= phi.data().size();
    for (double& x : phi.data()) x -= mean;
}

void laplacian_u(const Grid& g, const VelocityField& f, std::vector<double>& out) {
    const double idx2 = 1.0 / (g.dx * g.dx), idy2 = 1.0 / (g.dy * g.dy);
    out.assign(static_cast<std::size_t>(g.nx) * g.ny, 0.0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int ip = (i + 1 == g.nx) ? 0 : i + 1;
            const int im = (i == 0) ? g.nx - 1 : i - 1;
            double lap = (f.u(im, j) - 2.0 * f.u(i, j) + f.u(ip, j)) * idx2;
            if (j == 0)
                lap += (f.u(i, 1) - 3.0 * f.u(i, 0)) * idy2;
            else if (j == g.ny - 1)
                lap += (f.u(i, j - 1) - 3.0 * f.u(i, j)) * idy2;
            else
                lap += (f.u(i, j - 1) - 2.0 * f.u(i, j) + f.u(i, j + 1)) * idy2;
            out[static_cast<std::size_t>(j) * g.nx + i] = lap;
        }
}

void laplacian_v(const Grid& g, const VelocityField& f, std::vector<double>& out) {
    const double idx2 = 1.0 / (g.dx * g.dx), idy2 = 1.0 / (g.dy * g.dy);
    out.assign(static_cast<std::size_t>(g.nx) * (g.ny + 1), 0.0);
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int ip = (i + 1 == g.nx) ? 0 : i + 1;
            const int im = (i == 0) ? g.nx - 1 : i - 1;
            const double lap = (f.v(im, j) - 2.0 * f.v(i, j) + f.v(ip, j)) * idx2 +
                               (f.v(i, j - 1) - 2.0 * f.v(i, j) + f.v(i, j + 1)) * idy2;
            out[static_cast<std::size_t>(j) * g.nx + i] = lap;
        }
}

double dissipation_form(const Grid& g, const VelocityField& f) {
    std::vector<double> lu, lv;
    laplacian_u(g, f, lu);
    laplacian_v(g, f, lv);
    double s = 0.0;
    for (std::size_t m = 0; m < f.u_data().size(); ++m) s -= f.u_data()[m] * lu[m];
    for (std::size_t m = 0; m < f.v_data().size(); ++m) s -= f.v_data()[m] * lv[m];
    return s * g.dx * g.dy;
}

} // namespace layersep
