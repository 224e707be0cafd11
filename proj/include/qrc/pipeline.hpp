// pipeline.hpp — glue shared by the optimizer objective and the experiment
// harness: run the reservoir on a task, assemble design matrices with the
// one-step output alignment (output y_k is read from the state at t_k), fit,
// and score.

#pragma once

#include <cstdint>
#include <optional>

#include "qrc/regression.hpp"
#include "qrc/tasks.hpp"

namespace qrc {

struct SegmentScore {
    double nrmse = 0.0;
    std::vector<double> y;     // predicted outputs over the segment
    std::vector<double> ybar;  // targets over the segment
};

struct PipelineResult {
    RegressionModel model;
    SegmentScore train;
    std::optional<SegmentScore> test;
    ReadoutSeries series;
    std::vector<double> modified_inputs;
    EvolveDiagnostics diagnostics;
};

struct PipelineOptions {
    FeatureMode mode = FeatureMode::linear;
    double delta = 1e-10;
    RunOptions run;
    bool score_test = true;   // false: run and fit on the training span only
    bool keep_series = false; // retain readouts / modified inputs in the result

    // regression uses only these readout channels (1-based); empty = all
    std::vector<int> measured_channels;

    // stochastic readout acquisition instead of the deterministic path
    int trajectories = 0; // 0 = deterministic
    std::uint64_t seed = 1;
};

// Feature row for target index k is readout row k-1 (the state at t_k); the
// design for [begin, end) therefore uses readout rows [begin-1, end-1).
struct SegmentDesign {
    FeatureMatrix x;
    std::vector<double> y;
};
SegmentDesign segment_design(const FeatureMatrix& features, const TaskDataset& task,
                             std::size_t begin, std::size_t end);

PipelineResult run_pipeline(const SystemSpec& spec, const ReservoirParams& params,
                            const TaskDataset& task, const FeedbackConfig& feedback,
                            const PipelineOptions& opts);

} // namespace qrc
