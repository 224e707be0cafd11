// io.hpp — experiment configuration (JSON), result tables (CSV) and
// self-contained SVG line plots.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qrc/errors.hpp"
#include "qrc/tasks.hpp"

namespace qrc {

struct TaskConfig {
    std::string type = "mackey-glass"; // or "sine-square"

    // mackey-glass
    int delay = 20;
    std::uint64_t fade = 200, train = 600, test = 300;
    double dt_internal = 0.1;

    // sine-square
    std::uint64_t n_fade = 10, n_train = 50, n_test = 50;
    int n_ss = 16;
    double omega_ss = 10.0;

    std::uint64_t seed = 1;
};

struct ReservoirConfig {
    int n_atom = 1;
    int n_fock = 15;
    double omega_c = 40.0;
    std::vector<double> omega = {20.0};
    std::vector<double> g = {30.0};
    double epsilon = 20.0;
    double kappa = 10.0;
};

struct FeedbackTrainConfig {
    std::vector<int> channels;      // empty = no feedback
    std::vector<double> weights;    // used when optimizer == "none"
    std::string optimizer = "none"; // none | brute | brute-nm | de
    double bound_lo = -3.0, bound_hi = 3.0;
    double grid_step = 0.5;
    // staged-fidelity scan: 0 means "use the production n_fock"
    int scan_n_fock = 0;
    int refine_n_fock = 0;
    int rescore_top_k = 0;
    int de_maxiter = 1000;
    int de_batches = 3;
};

struct EvolutionConfig {
    std::string scheme = "deterministic"; // deterministic | trajectories
    int trajectories = 1000;
    int substeps = 100;            // deterministic minimum per input step
    int stochastic_substeps = 200; // Euler-Maruyama minimum per input step
    bool auto_substeps = true;
};

struct EsnConfig {
    int n_neuron = 12;
    int n_measured = 0; // 0 = all neurons measured
    bool diagonal_only = false;
    int n_networks = 100;
};

struct ExperimentConfig {
    std::string name = "experiment";
    TaskConfig task;
    ReservoirConfig reservoir;
    FeedbackTrainConfig feedback;
    std::string regression = "linear"; // linear | polynomial
    double delta = 1e-10;
    EvolutionConfig evolution;
    EsnConfig esn;
    std::uint64_t seed = 1;
    bool traces = false;

    std::string canonical_json() const;
    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig load(const std::string& path);
    void save(const std::string& path) const;

    bool operator==(const ExperimentConfig& o) const {
        return canonical_json() == o.canonical_json();
    }
};

struct ResultRow {
    std::string config_id;
    std::string segment; // train | test | error
    double nrmse = 0.0;
    double wall_seconds = 0.0;
    std::uint64_t seed = 0;
    double axis = 0.0;
    std::string note;
};

struct TraceSeries {
    std::string name;
    std::vector<double> t, input, modified, target, actual;
    std::vector<int> split; // 0 fade, 1 train, 2 test
};

struct ResultTable {
    std::vector<ResultRow> rows;
    std::vector<TraceSeries> traces;
};

void emit_csv(const ResultTable& table, const std::string& path);
ResultTable read_csv(const std::string& path); // rows only (inverse of emit_csv)

void emit_trace_csv(const TraceSeries& trace, const std::string& path);

// Dataset export: columns k, t, f, target, split (0 fade / 1 train / 2 test).
void emit_task_csv(const TaskDataset& task, const std::string& path);

struct SvgSeries {
    std::string label;
    std::vector<double> x, y;
    std::string color = "#1f6fb2";
};

struct SvgOptions {
    std::string title, x_label, y_label;
    bool log_x = false;
    bool log_y = false;
};

void emit_svg(const std::vector<SvgSeries>& series, const SvgOptions& opts,
              const std::string& path);

} // namespace qrc
