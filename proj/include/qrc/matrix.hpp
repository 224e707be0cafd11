// matrix.hpp — dense complex matrices and their compressed sparse form.
// Row-major storage; arithmetic helpers route through the kernel layer.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "qrc/errors.hpp"
#include "qrc/kernels.hpp"

namespace qrc {

using cd = std::complex<double>;

class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, cd(0.0, 0.0)) {}

    static CMatrix identity(std::size_t n) {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return a_.size(); }
    bool square() const { return rows_ == cols_; }

    cd& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cd& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    cd* data() { return a_.data(); }
    const cd* data() const { return a_.data(); }

    void set_zero() { std::fill(a_.begin(), a_.end(), cd(0.0, 0.0)); }

    CMatrix& operator+=(const CMatrix& o) {
        require_same_shape(o);
        kernels::active().axpy_re(size(), 1.0, o.data(), data());
        return *this;
    }
    CMatrix& operator-=(const CMatrix& o) {
        require_same_shape(o);
        kernels::active().axpy_re(size(), -1.0, o.data(), data());
        return *this;
    }
    CMatrix& operator*=(cd s) {
        for (auto& v : a_) v *= s;
        return *this;
    }
    CMatrix& operator*=(double s) {
        kernels::active().scal_re(size(), s, data());
        return *this;
    }

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(cd s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(double s, CMatrix a) { return a *= s; }

private:
    void require_same_shape(const CMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw ContractError("matrix shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cd> a_;
};

inline CMatrix adjoint(const CMatrix& m) {
    CMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
    return out;
}

inline CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw ContractError("matmul shape mismatch");
    CMatrix c(a.rows(), b.cols());
    const auto& ops = kernels::active();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cd* crow = c.data() + i * c.cols();
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cd aik = a(i, k);
            if (aik == cd(0.0, 0.0)) continue;
            ops.axpy(b.cols(), aik, b.data() + k * b.cols(), crow);
        }
    }
    return c;
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cd aij = a(i, j);
            if (aij == cd(0.0, 0.0)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return c;
}

inline cd trace(const CMatrix& m) {
    cd t(0.0, 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

inline double max_abs(const CMatrix& m) {
    double v = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) v = std::max(v, std::abs(m.data()[i]));
    return v;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ContractError("max_abs_diff shape mismatch");
    double v = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        v = std::max(v, std::abs(a.data()[i] - b.data()[i]));
    return v;
}

// max |A - A†|: zero for Hermitian matrices.
inline double hermitian_defect(const CMatrix& m) {
    if (!m.square()) throw ContractError("hermitian_defect needs a square matrix");
    double v = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            v = std::max(v, std::abs(m(i, j) - std::conj(m(j, i))));
    return v;
}

// Owning CSR matrix; exact zeros are dropped, everything else kept verbatim
// so construction stays deterministic.
class CsrMatrix {
public:
    CsrMatrix() = default;

    static CsrMatrix from_dense(const CMatrix& m) {
        if (!m.square()) throw ContractError("CsrMatrix needs a square matrix");
        CsrMatrix s;
        s.dim_ = static_cast<int>(m.rows());
        s.row_ptr_.assign(static_cast<std::size_t>(s.dim_) + 1, 0);
        for (int r = 0; r < s.dim_; ++r) {
            for (int c = 0; c < s.dim_; ++c) {
                const cd v = m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
                if (v != cd(0.0, 0.0)) {
                    s.col_.push_back(c);
                    s.val_.push_back(v);
                }
            }
            s.row_ptr_[static_cast<std::size_t>(r) + 1] = static_cast<int>(s.col_.size());
        }
        return s;
    }

    kernels::CsrView view() const {
        return {row_ptr_.data(), col_.data(), val_.data(), dim_};
    }

    int dim() const { return dim_; }
    std::size_t nnz() const { return val_.size(); }

    // tr(A X) for dense X.
    cd trace_product(const cd* x) const {
        cd t(0.0, 0.0);
        for (int r = 0; r < dim_; ++r)
            for (int k = row_ptr_[static_cast<std::size_t>(r)];
                 k < row_ptr_[static_cast<std::size_t>(r) + 1]; ++k)
                t += val_[static_cast<std::size_t>(k)] *
                     x[static_cast<std::size_t>(col_[static_cast<std::size_t>(k)]) * dim_ + r];
        return t;
    }

private:
    int dim_ = 0;
    std::vector<int> row_ptr_;
    std::vector<int> col_;
    std::vector<cd> val_;
};

} // namespace qrc
