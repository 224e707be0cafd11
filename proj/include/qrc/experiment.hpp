// experiment.hpp — orchestration: configs to datasets/systems, feedback
// training (optionally with staged Fock fidelity), single experiments,
// parameter sweeps, and named presets matching the benchmark studies.

#pragma once

#include "qrc/esn.hpp"
#include "qrc/io.hpp"
#include "qrc/optimize.hpp"
#include "qrc/parallel.hpp"

namespace qrc {

TaskDataset build_task(const TaskConfig& cfg);
ReservoirParams reservoir_params(const ReservoirConfig& cfg);
SystemSpec build_reservoir_space(const ReservoirConfig& cfg, int n_fock_override = 0);

struct HarnessOptions {
    std::size_t workers = 0; // 0 = default_workers()
    std::string out_dir;     // empty = no files written

    // CLI overrides; zero/empty = keep config values
    std::uint64_t seed = 0;
    int substeps = 0;
    int trajectories = 0;

    std::size_t effective_workers() const {
        return workers != 0 ? workers : default_workers();
    }
};

struct TrainedFeedback {
    FeedbackConfig feedback;
    OptimizerReport report;
    bool trained = false;
};

// Resolves the feedback weights for a config: passthrough when optimizer is
// "none", otherwise runs the configured global optimizer.  Scans may run at a
// reduced Fock truncation (scan_n_fock); candidates are then re-scored at the
// production truncation before the final choice.
TrainedFeedback train_feedback(const ExperimentConfig& cfg, const TaskDataset& task,
                               const HarnessOptions& opts);

struct ExperimentOutcome {
    ResultTable table;
    TrainedFeedback trained;
    PipelineResult pipeline;
    ExperimentConfig resolved; // config with overrides and trained weights applied
};

ExperimentOutcome run_experiment(const ExperimentConfig& cfg, const HarnessOptions& opts = {});

struct SweepSpec {
    std::string axis; // atoms | delay | kappa | nss | trajectories | esn_size
    std::vector<double> values;

    // optional parallel arrays (same length as values)
    std::vector<int> n_fock;                       // 0 entries keep the config value
    std::vector<std::vector<double>> omega_ladder; // atoms axis
    std::vector<std::vector<double>> g_ladder;     // atoms axis

    static std::vector<double> default_values(const std::string& axis);
};

ResultTable run_sweep(const ExperimentConfig& cfg, const SweepSpec& sweep,
                      const HarnessOptions& opts = {});

// ------------------------------------------------------------------ presets

struct PresetInfo {
    std::string name;
    std::string study;   // which figure-style study it reproduces
    std::string details; // parameters and desk-scale reductions
};

std::vector<PresetInfo> list_presets();

// Runs a named preset (desk scale by default, full scale with full = true);
// writes outputs under opts.out_dir.  Returns the combined result table.
ResultTable run_preset(const std::string& name, bool full, const HarnessOptions& opts);

} // namespace qrc
