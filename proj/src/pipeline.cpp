#include "qrc/pipeline.hpp"

namespace qrc {

SegmentDesign segment_design(const FeatureMatrix& features, const TaskDataset& task,
                             std::size_t begin, std::size_t end) {
    if (begin < 1 || end <= begin || end > task.size() || end - 1 > features.rows)
        throw ContractError("segment out of range");
    SegmentDesign d;
    d.x.rows = end - begin;
    d.x.cols = features.cols;
    d.x.v.assign(features.v.begin() + static_cast<std::ptrdiff_t>((begin - 1) * features.cols),
                 features.v.begin() + static_cast<std::ptrdiff_t>((end - 1) * features.cols));
    d.y.assign(task.targets.begin() + static_cast<std::ptrdiff_t>(begin),
               task.targets.begin() + static_cast<std::ptrdiff_t>(end));
    return d;
}

PipelineResult run_pipeline(const SystemSpec& spec, const ReservoirParams& params,
                            const TaskDataset& task, const FeedbackConfig& feedback,
                            const PipelineOptions& opts) {
    task.validate();
    const std::size_t run_len = opts.score_test ? task.test_end : task.train_end;
    const std::span<const double> inputs{task.inputs.data(), run_len};

    PipelineResult result;
    RunOptions run = opts.run;
    run.diag = &result.diagnostics;
    if (opts.keep_series) run.modified_inputs = &result.modified_inputs;

    ReadoutSeries series;
    if (opts.trajectories > 0) {
        series = run_trajectory_protocol(spec, params, inputs, feedback, opts.trajectories,
                                         opts.seed, run);
    } else {
        series = run_deterministic(spec, params, inputs, feedback, run);
    }

    const ReadoutSeries* for_features = &series;
    ReadoutSeries reduced;
    if (!opts.measured_channels.empty()) {
        reduced.steps = series.steps;
        reduced.channels = static_cast<int>(opts.measured_channels.size());
        reduced.source = series.source;
        reduced.trajectories = series.trajectories;
        reduced.values.resize(reduced.steps * opts.measured_channels.size());
        for (int ch : opts.measured_channels) {
            if (ch < 1 || ch > series.channels)
                throw ContractError("measured channel " + std::to_string(ch) +
                                    " outside 1.." + std::to_string(series.channels));
            reduced.labels.push_back(series.labels.empty()
                                         ? std::to_string(ch)
                                         : series.labels[static_cast<std::size_t>(ch - 1)]);
        }
        for (std::size_t k = 0; k < series.steps; ++k)
            for (std::size_t c = 0; c < opts.measured_channels.size(); ++c)
                reduced.values[k * opts.measured_channels.size() + c] =
                    series.at(k, opts.measured_channels[c] - 1);
        for_features = &reduced;
    }

    const FeatureMatrix features = (opts.mode == FeatureMode::polynomial)
                                       ? polynomial_features(*for_features)
                                       : linear_features(*for_features);

    const SegmentDesign train = segment_design(features, task, task.fade_end, task.train_end);
    result.model = fit(train.x, train.y, opts.delta, opts.mode);

    result.train.y = predict(result.model, train.x);
    result.train.ybar = train.y;
    result.train.nrmse = nrmse(result.train.y, result.train.ybar);

    if (opts.score_test) {
        const SegmentDesign test = segment_design(features, task, task.train_end, task.test_end);
        SegmentScore score;
        score.y = predict(result.model, test.x);
        score.ybar = test.y;
        score.nrmse = nrmse(score.y, score.ybar);
        result.test = std::move(score);
    }
    if (opts.keep_series) result.series = std::move(series);
    return result;
}

} // namespace qrc
