// linalg.hpp — Eigen-backed adapters for cold-path dense linear algebra
// (eigenvalue checks, spectral bounds).  Hot loops never touch these.

#pragma once

#include <Eigen/Dense>

#include "qrc/matrix.hpp"

namespace qrc {

inline Eigen::MatrixXcd to_eigen(const CMatrix& m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    return e;
}

inline CMatrix from_eigen(const Eigen::MatrixXcd& e) {
    CMatrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j)
            m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
    return m;
}

inline Eigen::VectorXd hermitian_eigenvalues(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m),
                                                           Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw Error("linalg", "hermitian eigensolve failed");
    return solver.eigenvalues();
}

inline double min_hermitian_eigenvalue(const CMatrix& m) {
    const auto ev = hermitian_eigenvalues(m);
    return ev.minCoeff();
}

// lambda_max - lambda_min of a Hermitian matrix.
inline double hermitian_spread(const CMatrix& m) {
    const auto ev = hermitian_eigenvalues(m);
    return ev.maxCoeff() - ev.minCoeff();
}

struct HermitianEigen {
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;
};

inline HermitianEigen hermitian_eigensystem(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m));
    if (solver.info() != Eigen::Success)
        throw Error("linalg", "hermitian eigensolve failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

} // namespace qrc
