// reservoir.hpp — closed-loop reservoir protocol: feedback-modified drive,
// per-step readout extraction, sequential trajectory averaging, and the
// polynomial feature expansion.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qrc/dynamics.hpp"
#include "qrc/system.hpp"

namespace qrc {

struct FeedbackConfig {
    std::vector<int> channels;    // 1-based readout indices, n in 1 .. 2N+2
    std::vector<double> weights;  // V per channel

    bool any_active() const;
    void validate(int n_readouts) const;
};

double modified_input(double f_k, std::span<const double> readouts_at_k,
                      const FeedbackConfig& feedback);

struct ReadoutSeries {
    enum class Source { deterministic, trajectory_average };

    std::size_t steps = 0;
    int channels = 0;
    std::vector<double> values; // steps x channels; row k holds x_{k+1}
    std::vector<std::string> labels;
    Source source = Source::deterministic;
    int trajectories = 0;

    double at(std::size_t step, int channel) const {
        return values[step * static_cast<std::size_t>(channels) +
                      static_cast<std::size_t>(channel)];
    }
    std::span<const double> row(std::size_t step) const {
        return {values.data() + step * static_cast<std::size_t>(channels),
                static_cast<std::size_t>(channels)};
    }
    void check_finite() const;
    void validate() const;
};

struct RunOptions {
    int substeps = 100;            // per input interval; raised to the stability floor
    bool auto_substeps = true;     // clamp substeps up to the scheme's stability floor
    int stochastic_substeps = 200; // same, for the Euler-Maruyama path
    double input_cap = 1e3;        // |f_tilde| beyond this raises IntegratorError
    std::size_t workers = 1;       // used only where trajectories are independent
    EvolveDiagnostics* diag = nullptr;

    // Also records the modified-input series when non-null.
    std::vector<double>* modified_inputs = nullptr;

    // Start state override (default: global ground state).  Used by the
    // fading-memory checks; the production pipeline never sets it.
    const DensityMatrix* initial = nullptr;

    // Per-interval state observer (step index, state after the interval).
    std::function<void(std::size_t, const DensityMatrix&)> on_state;
};

// Closed-loop deterministic run: row k of the result holds the expectation
// values at t_{k+1}; the feedback term for step k uses the readouts at t_k
// (all zero for the ground initial state at k = 0).
ReadoutSeries run_deterministic(const SystemSpec& spec, const ReservoirParams& params,
                                std::span<const double> inputs,
                                const FeedbackConfig& feedback, const RunOptions& opts = {});

// Sequential measurement-trajectory protocol: trajectory M uses the running
// mean of trajectories 1..M-1 in its feedback term (zero for M = 1) and the
// result is the mean readout series over all trajectories.
ReadoutSeries run_trajectory_protocol(const SystemSpec& spec, const ReservoirParams& params,
                                      std::span<const double> inputs,
                                      const FeedbackConfig& feedback, int m_total,
                                      std::uint64_t seed, const RunOptions& opts = {});

// All per-trajectory conditional-expectation series for an ensemble with no
// feedback coupling (weights all zero); trajectories are independent and run
// as a deterministic parallel map keyed by trajectory index.
std::vector<ReadoutSeries> run_stochastic_ensemble(const SystemSpec& spec,
                                                   const ReservoirParams& params,
                                                   std::span<const double> inputs,
                                                   int m_total, std::uint64_t seed,
                                                   const RunOptions& opts = {});

struct FeatureMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> v; // row-major

    double at(std::size_t r, std::size_t c) const { return v[r * cols + c]; }
};

// Linear block (channel order) followed by all distinct quadratic monomials
// x_a x_b with a <= b in lexicographic (a, b) order; 2N^2 + 7N + 5 columns.
FeatureMatrix polynomial_features(const ReadoutSeries& readouts);

// Linear block only.
FeatureMatrix linear_features(const ReadoutSeries& readouts);

} // namespace qrc
