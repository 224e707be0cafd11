// AVX2+FMA kernel variants.  Complex doubles are packed two per 256-bit lane
// as [re0, im0, re1, im1]; complex multiply uses the permute/fmaddsub idiom.
// Strided and transpose-access kernels stay scalar — they are a small share
// of the inner-loop cost and gain nothing from gathers at these dimensions.

#include "kernels_detail.hpp"

#if defined(QRC_HAVE_AVX2_TU) && defined(__AVX2__)

#include <immintrin.h>

namespace qrc::kernels::avx2_impl {
namespace {

inline void axpy_body(std::size_t n, cd a, const cd* x, cd* y) {
    const double* xp = reinterpret_cast<const double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    const std::size_t lanes = (n / 2) * 4;
    for (; i < lanes; i += 4) {
        const __m256d xv = _mm256_loadu_pd(xp + i);
        const __m256d xs = _mm256_permute_pd(xv, 0x5); // [im0, re0, im1, re1]
        const __m256d t = _mm256_mul_pd(ai, xs);
        const __m256d prod = _mm256_fmaddsub_pd(ar, xv, t);
        _mm256_storeu_pd(yp + i, _mm256_add_pd(_mm256_loadu_pd(yp + i), prod));
    }
    if (n & 1) {
        const std::size_t k = n - 1;
        const double xr = xp[2 * k], xi = xp[2 * k + 1];
        yp[2 * k] += a.real() * xr - a.imag() * xi;
        yp[2 * k + 1] += a.real() * xi + a.imag() * xr;
    }
}

void axpy(std::size_t n, cd a, const cd* x, cd* y) { axpy_body(n, a, x, y); }

void axpy_re(std::size_t n, double a, const cd* x, cd* y) {
    const double* xp = reinterpret_cast<const double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    const std::size_t total = 2 * n;
    for (; i + 4 <= total; i += 4) {
        const __m256d xv = _mm256_loadu_pd(xp + i);
        const __m256d yv = _mm256_loadu_pd(yp + i);
        _mm256_storeu_pd(yp + i, _mm256_fmadd_pd(av, xv, yv));
    }
    for (; i < total; ++i) yp[i] += a * xp[i];
}

void scal_re(std::size_t n, double a, cd* x) {
    double* xp = reinterpret_cast<double*>(x);
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    const std::size_t total = 2 * n;
    for (; i + 4 <= total; i += 4) {
        _mm256_storeu_pd(xp + i, _mm256_mul_pd(av, _mm256_loadu_pd(xp + i)));
    }
    for (; i < total; ++i) xp[i] *= a;
}

void csr_mul_acc(const CsrView& a, const cd* x, cd* y, cd alpha) {
    const int dim = a.dim;
    for (int r = 0; r < dim; ++r) {
        cd* yrow = y + static_cast<std::size_t>(r) * dim;
        for (int k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
            axpy_body(static_cast<std::size_t>(dim), alpha * a.val[k],
                      x + static_cast<std::size_t>(a.col[k]) * dim, yrow);
        }
    }
}

const Ops table_value = {
    "avx2",
    axpy,
    axpy_re,
    scal_re,
    csr_mul_acc,
    scalar_impl::csr_rdag_mul_acc,
    scalar_impl::acc_plus_adjoint,
    scalar_impl::hermitize,
};

} // namespace

const Ops* table() { return &table_value; }

} // namespace qrc::kernels::avx2_impl

#else

namespace qrc::kernels::avx2_impl {
const Ops* table() { return nullptr; }
} // namespace qrc::kernels::avx2_impl

#endif
