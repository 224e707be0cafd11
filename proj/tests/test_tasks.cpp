#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qrc/tasks.hpp"

using namespace qrc;

TEST_CASE("mackey-glass: f = 1 is an exact fixed point") {
    MackeyGlassParams p;
    p.initial_history = 1.0;
    p.buffer = 50.0;
    const auto series = mackey_glass_series(p, 1000, 0.1);
    for (double v : series) CHECK(std::abs(v - 1.0) < 1e-9);
}

TEST_CASE("mackey-glass: step-halving self-consistency") {
    // Chaotic divergence grows the discretization gap exponentially with the
    // integration horizon, so the oracle runs on a 300-unit buffer where the
    // step error still dominates the Lyapunov amplification.
    MackeyGlassParams p;
    p.buffer = 300.0;
    const auto coarse = mackey_glass_series(p, 500, 0.1);
    const auto mid = mackey_glass_series(p, 500, 0.05);
    const auto fine = mackey_glass_series(p, 500, 0.02);
    double gap_cf = 0.0, gap_mf = 0.0;
    for (std::size_t k = 0; k < coarse.size(); ++k) {
        gap_cf = std::max(gap_cf, std::abs(coarse[k] - fine[k]));
        gap_mf = std::max(gap_mf, std::abs(mid[k] - fine[k]));
    }
    CHECK(gap_cf < 1e-3);
    // effective convergence order stays >= 2 (initial-history kinks at
    // multiples of tau cap it below RK4's smooth-problem order)
    CHECK(std::log2(gap_cf / gap_mf) > 1.5);
}

TEST_CASE("mackey-glass: chaotic regime is bounded and non-constant") {
    MackeyGlassParams p;
    const auto series = mackey_glass_series(p, 1500, 0.1);
    double lo = series[0], hi = series[0];
    for (double v : series) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(lo >= 0.2);
    CHECK(hi <= 1.5);
    CHECK(hi - lo > 0.3);
}

TEST_CASE("mackey-glass: generator is deterministic") {
    MackeyGlassParams p;
    const auto a = mackey_glass_series(p, 300, 0.1);
    const auto b = mackey_glass_series(p, 300, 0.1);
    CHECK(a == b);
}

TEST_CASE("mackey-glass dataset: delay shifts the target series") {
    MackeyGlassParams p;
    p.delay = 0;
    const TaskDataset same = mackey_glass_dataset(p, 10, 50, 20);
    CHECK(same.inputs == same.targets);

    p.delay = 20;
    const TaskDataset shifted = mackey_glass_dataset(p, 10, 50, 20);
    const TaskDataset longer = [] {
        MackeyGlassParams q;
        q.delay = 0;
        return mackey_glass_dataset(q, 10, 50, 40);
    }();
    for (std::size_t k = 0; k < shifted.size(); ++k)
        CHECK(shifted.targets[k] == doctest::Approx(longer.inputs[k + 20]).epsilon(1e-12));

    CHECK(shifted.fade_end == 10);
    CHECK(shifted.train_end == 60);
    CHECK(shifted.test_end == 80);
}

TEST_CASE("sine-square: time step, levels and split accounting") {
    const TaskDataset ds = sine_square_dataset(10, 50, 50, 16, 10.0, 3);
    CHECK(ds.dt == doctest::Approx(2.0 * 3.14159265358979323846 / 160.0).epsilon(1e-12));
    CHECK(ds.size() == 110 * 16);
    CHECK(ds.fade_end == 160);
    CHECK(ds.train_end == 960);
    CHECK(ds.test_end == 1760);

    for (std::size_t k = 0; k < ds.size(); ++k) {
        CHECK((ds.targets[k] == 0.0 || ds.targets[k] == 1.0));
        CHECK(ds.inputs[k] >= -1e-12);
        CHECK(ds.inputs[k] <= 2.0 + 1e-12);
    }

    // per-waveform structure: square = {2,0} plateaus, sine = 1 + sin
    for (std::size_t w = 0; w < 110; ++w) {
        const std::size_t base = 16 * w;
        const bool is_sine = ds.targets[base] == 1.0;
        for (std::size_t j = 0; j < 16; ++j) {
            CHECK(ds.targets[base + j] == (is_sine ? 1.0 : 0.0));
            if (!is_sine) CHECK(ds.inputs[base + j] == (j < 8 ? 2.0 : 0.0));
            else
                CHECK(ds.inputs[base + j] ==
                      doctest::Approx(1.0 + std::sin(10.0 * ds.dt * static_cast<double>(j)))
                          .epsilon(1e-12));
        }
    }
}

TEST_CASE("sine-square: same seed, same sequence; different seed differs") {
    const TaskDataset a = sine_square_dataset(2, 5, 5, 8, 10.0, 11);
    const TaskDataset b = sine_square_dataset(2, 5, 5, 8, 10.0, 11);
    const TaskDataset c = sine_square_dataset(2, 5, 5, 8, 10.0, 12);
    CHECK(a.inputs == b.inputs);
    CHECK(a.targets == b.targets);
    CHECK(a.targets != c.targets);
}

TEST_CASE("sine-square: odd or tiny N_ss rejected") {
    CHECK_THROWS_AS(sine_square_dataset(1, 1, 1, 7, 10.0, 1), ContractError);
    CHECK_THROWS_AS(sine_square_dataset(1, 1, 1, 0, 10.0, 1), ContractError);
}

TEST_CASE("dataset split boundaries cover the series") {
    MackeyGlassParams p;
    p.delay = 5;
    const TaskDataset ds = mackey_glass_dataset(p, 3, 7, 5);
    ds.validate();
    CHECK(ds.fade_end < ds.train_end);
    CHECK(ds.train_end < ds.test_end);
    CHECK(ds.test_end == ds.size());
}
