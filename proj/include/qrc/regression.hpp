// regression.hpp — ridge-regularized pseudoinverse training of the linear
// output layer, prediction, and NRMSE scoring.

#pragma once

#include <span>
#include <vector>

#include "qrc/reservoir.hpp"

namespace qrc {

enum class FeatureMode { linear, polynomial };

struct RegressionModel {
    std::vector<double> weights; // bias first, then one weight per feature
    double delta = 1e-10;
    FeatureMode mode = FeatureMode::linear;
    bool fallback_used = false;  // rank-revealing path engaged

    std::size_t feature_count() const { return weights.empty() ? 0 : weights.size() - 1; }
};

// W = (X^T X + delta I)^-1 X^T ybar with X = [1 | features].  An
// ill-conditioned normal-equations solve falls back to a rank-revealing
// least-squares factorization of the ridge-augmented system.
RegressionModel fit(const FeatureMatrix& features, std::span<const double> targets,
                    double delta = 1e-10, FeatureMode mode = FeatureMode::linear);

// y_k = W_0 + sum_n X_kn W_n
std::vector<double> predict(const RegressionModel& model, const FeatureMatrix& features);

// sqrt(mean squared error) normalized by the target range over the scored
// segment.
double nrmse(std::span<const double> y, std::span<const double> ybar);

} // namespace qrc
