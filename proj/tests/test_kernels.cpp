#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qrc/kernels.hpp"
#include "qrc/matrix.hpp"
#include "qrc/rng.hpp"

using namespace qrc;

namespace {

CMatrix random_matrix(std::size_t n, RngStream& rng) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = cd(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    return m;
}

CMatrix random_sparse(std::size_t n, double density, RngStream& rng) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (rng.uniform01() < density)
                m(i, j) = cd(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    return m;
}

} // namespace

TEST_CASE("every available kernel set matches the scalar reference") {
    RngStream rng(42, 0);
    const auto& ref = kernels::scalar();

    std::vector<const kernels::Ops*> tables{&kernels::scalar()};
    if (kernels::avx2() != nullptr) tables.push_back(kernels::avx2());

    for (const std::size_t n : {1u, 2u, 7u, 16u, 33u}) {
        CMatrix x = random_matrix(n, rng);
        CMatrix a = random_sparse(n, 0.25, rng);
        const CsrMatrix acsr = CsrMatrix::from_dense(a);
        const cd alpha(0.37, -1.21);

        CMatrix y_ref = random_matrix(n, rng);
        CMatrix w = random_matrix(n, rng);

        // reference results
        CMatrix r_axpy = y_ref;
        ref.axpy(r_axpy.size(), alpha, x.data(), r_axpy.data());
        CMatrix r_axre = y_ref;
        ref.axpy_re(r_axre.size(), 0.77, x.data(), r_axre.data());
        CMatrix r_mul = y_ref;
        ref.csr_mul_acc(acsr.view(), x.data(), r_mul.data(), alpha);
        CMatrix r_rdag = y_ref;
        ref.csr_rdag_mul_acc(acsr.view(), x.data(), r_rdag.data(), alpha);
        CMatrix r_adj = y_ref;
        ref.acc_plus_adjoint(static_cast<int>(n), w.data(), r_adj.data());
        CMatrix r_herm = w;
        ref.hermitize(static_cast<int>(n), r_herm.data());

        for (const auto* t : tables) {
            CAPTURE(t->name);
            CMatrix y = y_ref;
            t->axpy(y.size(), alpha, x.data(), y.data());
            CHECK(max_abs_diff(y, r_axpy) < 1e-13);

            y = y_ref;
            t->axpy_re(y.size(), 0.77, x.data(), y.data());
            CHECK(max_abs_diff(y, r_axre) < 1e-13);

            y = y_ref;
            t->csr_mul_acc(acsr.view(), x.data(), y.data(), alpha);
            CHECK(max_abs_diff(y, r_mul) < 1e-12);

            y = y_ref;
            t->csr_rdag_mul_acc(acsr.view(), x.data(), y.data(), alpha);
            CHECK(max_abs_diff(y, r_rdag) < 1e-12);

            y = y_ref;
            t->acc_plus_adjoint(static_cast<int>(n), w.data(), y.data());
            CHECK(max_abs_diff(y, r_adj) < 1e-13);

            y = w;
            t->hermitize(static_cast<int>(n), y.data());
            CHECK(max_abs_diff(y, r_herm) < 1e-13);
        }
    }
}

TEST_CASE("csr application agrees with dense matmul") {
    RngStream rng(7, 0);
    const std::size_t n = 12;
    CMatrix a = random_sparse(n, 0.3, rng);
    CMatrix x = random_matrix(n, rng);
    const CsrMatrix acsr = CsrMatrix::from_dense(a);

    CMatrix left(n, n);
    kernels::active().csr_mul_acc(acsr.view(), x.data(), left.data(), cd(1.0, 0.0));
    CHECK(max_abs_diff(left, matmul(a, x)) < 1e-12);

    CMatrix right(n, n);
    kernels::active().csr_rdag_mul_acc(acsr.view(), x.data(), right.data(), cd(1.0, 0.0));
    CHECK(max_abs_diff(right, matmul(x, adjoint(a))) < 1e-12);
}

TEST_CASE("trace_product matches dense trace") {
    RngStream rng(11, 0);
    const std::size_t n = 9;
    CMatrix a = random_sparse(n, 0.4, rng);
    CMatrix x = random_matrix(n, rng);
    const CsrMatrix acsr = CsrMatrix::from_dense(a);
    const cd expected = trace(matmul(a, x));
    CHECK(std::abs(acsr.trace_product(x.data()) - expected) < 1e-12);
}

TEST_CASE("kernel selection is explicit and reversible") {
    const auto names = kernels::available();
    CHECK(names.front() == "scalar");
    for (const auto& n : names) {
        kernels::select(n);
        CHECK(kernels::active().name == n);
    }
    kernels::select("auto");
    CHECK_THROWS_AS(kernels::select("sse9"), ConfigError);
}
