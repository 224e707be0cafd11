// tasks.hpp — benchmark input/target series: Mackey-Glass delay-differential
// forecasting and sine-vs-square waveform classification.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qrc/errors.hpp"

namespace qrc {

struct TaskDataset {
    std::vector<double> inputs;   // f_k
    std::vector<double> targets;  // ybar_k
    std::size_t fade_end = 0;
    std::size_t train_end = 0;
    std::size_t test_end = 0;     // == inputs.size()
    double dt = 1.0;
    std::string name;

    std::size_t size() const { return inputs.size(); }
    void validate() const;
};

struct MackeyGlassParams {
    double beta = 0.2;
    double gamma = 0.1;
    double tau = 17.0;
    double power = 10.0;
    double buffer = 1000.0;      // discarded leading time units
    double dt_sample = 1.0;
    int delay = 0;               // target shift: ybar_k = f_{k+delay}
    double initial_history = 1.2;

    void validate() const;
};

// Integrates df/dt = beta f(t-tau)/(1 + f(t-tau)^power) - gamma f(t) with
// fixed-step RK4; the delayed value is linearly interpolated from a ring
// buffer of past samples at dt_internal resolution.  Returns `length`
// samples spaced dt_sample apart, after discarding the buffer interval.
std::vector<double> mackey_glass_series(const MackeyGlassParams& params, std::size_t length,
                                        double dt_internal = 0.1);

TaskDataset mackey_glass_dataset(const MackeyGlassParams& params, std::size_t fade_len,
                                 std::size_t train_len, std::size_t test_len,
                                 double dt_internal = 0.1);

// 110 random waveforms by default (10 fade + 50 train + 50 test), each
// occupying n_samples = N_ss points of one period 2 pi / omega_ss.
// Sine waveforms are 1 + sin(omega t) with phase 0 at the waveform start;
// square waveforms are 2 for the first half period and 0 for the second.
// Targets: 1 = sine, 0 = square, per sample.
TaskDataset sine_square_dataset(std::size_t n_fade, std::size_t n_train, std::size_t n_test,
                                int n_ss, double omega_ss, std::uint64_t seed);

} // namespace qrc
