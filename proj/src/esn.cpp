#include "qrc/esn.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "qrc/parallel.hpp"
#include "qrc/pipeline.hpp"
#include "qrc/rng.hpp"

namespace qrc {

EsnSpec esn_random(int n_neuron, int n_measured, bool diagonal_only, std::uint64_t seed) {
    if (n_neuron < 1 || n_measured < 1 || n_measured > n_neuron)
        throw ContractError("need 1 <= n_measured <= n_neuron");

    RngStream rng(seed, 0);
    EsnSpec spec;
    spec.n_neuron = n_neuron;
    spec.n_measured = n_measured;
    spec.diagonal_only = diagonal_only;
    spec.seed = seed;

    const std::size_t n = static_cast<std::size_t>(n_neuron);
    spec.a.resize(n * n);
    spec.b.resize(n);
    for (auto& v : spec.a) v = rng.uniform(-1.0, 1.0);
    for (auto& v : spec.b) v = rng.uniform(-1.0, 1.0);

    if (diagonal_only)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) spec.a[i * n + j] = 0.0;

    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> a(
        spec.a.data(), n_neuron, n_neuron);
    double smax = a.jacobiSvd().singularValues()(0);
    if (smax >= 1.0) {
        a *= 0.99 / smax;
        smax = a.jacobiSvd().singularValues()(0);
    }
    spec.sigma_max = smax;
    return spec;
}

std::vector<double> esn_run(const EsnSpec& spec, std::span<const double> inputs) {
    const std::size_t n = static_cast<std::size_t>(spec.n_neuron);
    std::vector<double> states(inputs.size() * n, 0.0);
    std::vector<double> x(n, 0.0), next(n, 0.0);
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = spec.b[i] * inputs[k];
            const double* arow = spec.a.data() + i * n;
            for (std::size_t j = 0; j < n; ++j) acc += arow[j] * x[j];
            next[i] = acc > 0.0 ? acc : 0.0;
        }
        x.swap(next);
        std::copy(x.begin(), x.end(), states.begin() + static_cast<std::ptrdiff_t>(k * n));
    }
    return states;
}

EsnEnsembleStats esn_ensemble_eval(const TaskDataset& task, int n_neuron, int n_measured,
                                   bool diagonal_only, int n_networks, double delta,
                                   std::uint64_t seed, std::size_t workers) {
    if (n_networks < 1) throw ContractError("n_networks must be >= 1");
    task.validate();

    struct Outcome {
        double nrmse = 0.0;
        bool ok = false;
    };
    std::vector<Outcome> outcomes(static_cast<std::size_t>(n_networks));

    parallel_for(static_cast<std::size_t>(n_networks), std::max<std::size_t>(workers, 1),
                 [&](std::size_t i) {
        const EsnSpec spec = esn_random(n_neuron, n_measured, diagonal_only,
                                        seed + 0x9e37 * (i + 1));
        const std::vector<double> states = esn_run(spec, task.inputs);

        // measured columns as a readout series; reuse the shared design logic
        ReadoutSeries series;
        series.steps = task.size();
        series.channels = n_measured;
        series.values.resize(series.steps * static_cast<std::size_t>(n_measured));
        for (std::size_t k = 0; k < series.steps; ++k)
            for (int c = 0; c < n_measured; ++c)
                series.values[k * static_cast<std::size_t>(n_measured) +
                              static_cast<std::size_t>(c)] =
                    states[k * static_cast<std::size_t>(n_neuron) + static_cast<std::size_t>(c)];

        try {
            const FeatureMatrix features = linear_features(series);
            const SegmentDesign train =
                segment_design(features, task, task.fade_end, task.train_end);
            const RegressionModel model = fit(train.x, train.y, delta, FeatureMode::linear);
            const SegmentDesign test =
                segment_design(features, task, task.train_end, task.test_end);
            const double score = nrmse(predict(model, test.x), test.y);
            if (std::isfinite(score)) outcomes[i] = {score, true};
        } catch (const Error&) {
            // degenerate fit: excluded and counted below
        }
    });

    EsnEnsembleStats stats;
    for (const auto& o : outcomes) {
        if (!o.ok) {
            ++stats.degenerate;
            continue;
        }
        stats.per_network.push_back(o.nrmse);
    }
    stats.evaluated = static_cast<int>(stats.per_network.size());
    if (stats.evaluated == 0) throw Error("esn", "all ensemble fits degenerate");

    double sum = 0.0;
    stats.min = stats.per_network.front();
    stats.max = stats.per_network.front();
    for (double v : stats.per_network) {
        sum += v;
        stats.min = std::min(stats.min, v);
        stats.max = std::max(stats.max, v);
    }
    stats.mean = sum / stats.evaluated;
    double var = 0.0;
    for (double v : stats.per_network) var += (v - stats.mean) * (v - stats.mean);
    if (stats.evaluated > 1)
        stats.std_error = std::sqrt(var / (stats.evaluated - 1)) /
                          std::sqrt(static_cast<double>(stats.evaluated));
    return stats;
}

} // namespace qrc
