// Scalar reference kernels.  These define the semantics the SIMD variants
// must reproduce.

#include "kernels_detail.hpp"

namespace qrc::kernels::scalar_impl {

void axpy(std::size_t n, cd a, const cd* x, cd* y) {
    const double ar = a.real(), ai = a.imag();
    const double* xp = reinterpret_cast<const double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = xp[2 * i], xi = xp[2 * i + 1];
        yp[2 * i] += ar * xr - ai * xi;
        yp[2 * i + 1] += ar * xi + ai * xr;
    }
}

void axpy_re(std::size_t n, double a, const cd* x, cd* y) {
    const double* xp = reinterpret_cast<const double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    for (std::size_t i = 0; i < 2 * n; ++i) yp[i] += a * xp[i];
}

void scal_re(std::size_t n, double a, cd* x) {
    double* xp = reinterpret_cast<double*>(x);
    for (std::size_t i = 0; i < 2 * n; ++i) xp[i] *= a;
}

void csr_mul_acc(const CsrView& a, const cd* x, cd* y, cd alpha) {
    const int dim = a.dim;
    for (int r = 0; r < dim; ++r) {
        cd* yrow = y + static_cast<std::size_t>(r) * dim;
        for (int k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
            const cd coeff = alpha * a.val[k];
            const cd* xrow = x + static_cast<std::size_t>(a.col[k]) * dim;
            axpy(static_cast<std::size_t>(dim), coeff, xrow, yrow);
        }
    }
}

void csr_rdag_mul_acc(const CsrView& a, const cd* x, cd* y, cd alpha) {
    const int dim = a.dim;
    // (X A†)[i, r] += conj(A[r, c]) X[i, c]: strided column walk.
    for (int r = 0; r < dim; ++r) {
        for (int k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
            const cd coeff = alpha * std::conj(a.val[k]);
            const int c = a.col[k];
            const cd* xcol = x + c;
            cd* ycol = y + r;
            for (int i = 0; i < dim; ++i) {
                ycol[static_cast<std::size_t>(i) * dim] +=
                    coeff * xcol[static_cast<std::size_t>(i) * dim];
            }
        }
    }
}

void acc_plus_adjoint(int dim, const cd* w, cd* y) {
    for (int i = 0; i < dim; ++i) {
        const cd* wrow = w + static_cast<std::size_t>(i) * dim;
        cd* yrow = y + static_cast<std::size_t>(i) * dim;
        for (int j = 0; j < dim; ++j) {
            yrow[j] += wrow[j] + std::conj(w[static_cast<std::size_t>(j) * dim + i]);
        }
    }
}

void hermitize(int dim, cd* x) {
    for (int i = 0; i < dim; ++i) {
        cd* xi = x + static_cast<std::size_t>(i) * dim;
        xi[i] = cd(xi[i].real(), 0.0);
        for (int j = i + 1; j < dim; ++j) {
            cd& upper = xi[j];
            cd& lower = x[static_cast<std::size_t>(j) * dim + i];
            const cd avg = 0.5 * (upper + std::conj(lower));
            upper = avg;
            lower = std::conj(avg);
        }
    }
}

} // namespace qrc::kernels::scalar_impl
