// Internal: scalar kernel entry points shared with the AVX2 table for the
// operations that stay scalar there (strided/transpose access patterns).

#pragma once

#include "qrc/kernels.hpp"

namespace qrc::kernels::scalar_impl {

void axpy(std::size_t n, cd a, const cd* x, cd* y);
void axpy_re(std::size_t n, double a, const cd* x, cd* y);
void scal_re(std::size_t n, double a, cd* x);
void csr_mul_acc(const CsrView& a, const cd* x, cd* y, cd alpha);
void csr_rdag_mul_acc(const CsrView& a, const cd* x, cd* y, cd alpha);
void acc_plus_adjoint(int dim, const cd* w, cd* y);
void hermitize(int dim, cd* x);

} // namespace qrc::kernels::scalar_impl

namespace qrc::kernels::avx2_impl {

// Present only when the TU was built with AVX2 support; pointers are null
// otherwise.  Filled into a table by kernels.cpp.
extern const Ops* table();

} // namespace qrc::kernels::avx2_impl
