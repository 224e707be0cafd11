// kernels.hpp — complex arithmetic kernels behind the integrators.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant compiled in its own translation unit.  The active table is
// chosen at runtime from CPUID; tests assert bit-level-close equivalence
// between variants on random data.  Density matrices and operators are stored
// row-major as std::complex<double>.

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace qrc::kernels {

using cd = std::complex<double>;

// Borrowed view of a compressed-sparse-row matrix (square, dimension dim).
struct CsrView {
    const int* row_ptr = nullptr; // dim + 1 entries
    const int* col = nullptr;     // nnz entries
    const cd* val = nullptr;      // nnz entries
    int dim = 0;
};

struct Ops {
    const char* name;

    // y += a x
    void (*axpy)(std::size_t n, cd a, const cd* x, cd* y);
    // y += a x with real a
    void (*axpy_re)(std::size_t n, double a, const cd* x, cd* y);
    // x *= a with real a
    void (*scal_re)(std::size_t n, double a, cd* x);
    // Y += alpha A X   (A sparse, X/Y dense dim x dim row-major)
    void (*csr_mul_acc)(const CsrView& a, const cd* x, cd* y, cd alpha);
    // Y += alpha X A†  (A sparse)
    void (*csr_rdag_mul_acc)(const CsrView& a, const cd* x, cd* y, cd alpha);
    // Y += W + W†
    void (*acc_plus_adjoint)(int dim, const cd* w, cd* y);
    // X = (X + X†) / 2
    void (*hermitize)(int dim, cd* x);
};

const Ops& scalar();
const Ops* avx2();    // nullptr if unsupported by the CPU or not compiled in
const Ops& active();

// name: "auto", "scalar", or "avx2"; throws qrc::ConfigError on bad name
// or unavailable variant.
void select(const std::string& name);

std::vector<std::string> available();

} // namespace qrc::kernels
