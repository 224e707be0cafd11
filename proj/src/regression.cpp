#include "qrc/regression.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace qrc {

RegressionModel fit(const FeatureMatrix& features, std::span<const double> targets,
                    double delta, FeatureMode mode) {
    const std::size_t rows = features.rows;
    const std::size_t f = features.cols;
    if (rows < 1) throw ContractError("fit needs at least one sample");
    if (targets.size() != rows) throw ContractError("target length mismatch");
    if (!(delta > 0.0)) throw ContractError("delta must be positive");
    for (double v : features.v)
        if (!std::isfinite(v)) throw ContractError("non-finite feature");
    for (double v : targets)
        if (!std::isfinite(v)) throw ContractError("non-finite target");

    const Eigen::Index n = static_cast<Eigen::Index>(f) + 1;
    Eigen::MatrixXd x(static_cast<Eigen::Index>(rows), n);
    for (std::size_t r = 0; r < rows; ++r) {
        x(static_cast<Eigen::Index>(r), 0) = 1.0;
        for (std::size_t c = 0; c < f; ++c)
            x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c) + 1) =
                features.at(r, c);
    }
    Eigen::VectorXd y(static_cast<Eigen::Index>(rows));
    for (std::size_t r = 0; r < rows; ++r) y(static_cast<Eigen::Index>(r)) = targets[r];

    Eigen::MatrixXd gram = x.transpose() * x;
    gram.diagonal().array() += delta;
    const Eigen::VectorXd rhs = x.transpose() * y;

    RegressionModel model;
    model.delta = delta;
    model.mode = mode;

    Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    Eigen::VectorXd w;
    bool ok = (ldlt.info() == Eigen::Success);
    if (ok) {
        w = ldlt.solve(rhs);
        ok = w.allFinite();
    }
    if (!ok) {
        // rank-revealing least squares on the ridge-augmented system
        model.fallback_used = true;
        Eigen::MatrixXd aug(static_cast<Eigen::Index>(rows) + n, n);
        aug.topRows(static_cast<Eigen::Index>(rows)) = x;
        aug.bottomRows(n) = std::sqrt(delta) * Eigen::MatrixXd::Identity(n, n);
        Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rows) + n);
        b.head(static_cast<Eigen::Index>(rows)) = y;
        w = aug.completeOrthogonalDecomposition().solve(b);
        if (!w.allFinite()) throw Error("regression", "least-squares fallback failed");
    }

    model.weights.assign(w.data(), w.data() + w.size());
    return model;
}

std::vector<double> predict(const RegressionModel& model, const FeatureMatrix& features) {
    if (features.cols != model.feature_count())
        throw ContractError("feature width does not match model");
    std::vector<double> out(features.rows, 0.0);
    for (std::size_t r = 0; r < features.rows; ++r) {
        double y = model.weights[0];
        const double* row = features.v.data() + r * features.cols;
        for (std::size_t c = 0; c < features.cols; ++c) y += row[c] * model.weights[c + 1];
        out[r] = y;
    }
    return out;
}

double nrmse(std::span<const double> y, std::span<const double> ybar) {
    if (y.size() != ybar.size()) throw ContractError("nrmse length mismatch");
    if (y.size() < 2) throw ContractError("nrmse needs at least two samples");
    double lo = ybar[0], hi = ybar[0];
    for (double v : ybar) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(hi > lo)) throw DegenerateTargetError("constant target admits no normalization");
    double sq = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) {
        const double d = y[k] - ybar[k];
        sq += d * d;
    }
    return std::sqrt(sq / static_cast<double>(y.size())) / (hi - lo);
}

} // namespace qrc
