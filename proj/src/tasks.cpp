#include "qrc/tasks.hpp"

#include <cmath>

#include "qrc/rng.hpp"

namespace qrc {

void TaskDataset::validate() const {
    if (inputs.size() != targets.size())
        throw ContractError("inputs and targets must have equal length");
    if (!(fade_end < train_end && train_end < test_end))
        throw ContractError("split boundaries must satisfy fade < train < test");
    if (test_end != inputs.size())
        throw ContractError("test_end must equal the series length");
    for (double v : targets)
        if (!std::isfinite(v)) throw ContractError("non-finite target");
}

void MackeyGlassParams::validate() const {
    if (!(beta > 0.0) || !(gamma > 0.0)) throw ContractError("beta and gamma must be positive");
    if (!(tau > 0.0)) throw ContractError("tau must be positive");
    if (delay < 0) throw ContractError("delay must be a nonnegative integer");
}

std::vector<double> mackey_glass_series(const MackeyGlassParams& params, std::size_t length,
                                        double dt_internal) {
    params.validate();
    if (!(dt_internal > 0.0)) throw ContractError("dt_internal must be positive");
    const double ratio = params.dt_sample / dt_internal;
    const long per_sample = std::lround(ratio);
    if (per_sample < 1 || std::abs(ratio - static_cast<double>(per_sample)) > 1e-9)
        throw ContractError("dt_internal must divide dt_sample");

    const double h = params.dt_sample / static_cast<double>(per_sample);
    if (params.tau / h < 2.0)
        throw ContractError("dt_internal too coarse relative to tau");
    const std::size_t delay_steps_min =
        static_cast<std::size_t>(std::ceil(params.tau / h)) + 2;

    const std::size_t buffer_steps =
        static_cast<std::size_t>(std::llround(params.buffer / h));
    const std::size_t total_steps = buffer_steps + (length > 0 ? (length - 1) : 0) *
                                    static_cast<std::size_t>(per_sample);

    // ring buffer of past values at substep resolution
    const std::size_t ring_size = delay_steps_min + 8;
    std::vector<double> ring(ring_size, params.initial_history);
    std::size_t head = 0; // index of the value at current time t

    auto back = [&](std::size_t lo) { return ring[(head + ring_size - (lo % ring_size)) % ring_size]; };

    // Cubic Lagrange through the four ring samples bracketing the delayed
    // time; exact at grid points, so constant histories stay bit-exact.
    auto delayed_at = [&](double steps_back) {
        const std::size_t lo = static_cast<std::size_t>(steps_back);
        const double s = steps_back - static_cast<double>(lo);
        if (s == 0.0) return back(lo);
        const double pm1 = back(lo - 1), p0 = back(lo), p1 = back(lo + 1), p2 = back(lo + 2);
        const double wm1 = -s * (s - 1.0) * (s - 2.0) / 6.0;
        const double w0 = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
        const double w1 = -(s + 1.0) * s * (s - 2.0) / 2.0;
        const double w2 = (s + 1.0) * s * (s - 1.0) / 6.0;
        return wm1 * pm1 + w0 * p0 + w1 * p1 + w2 * p2;
    };

    auto deriv = [&](double f_now, double f_delayed) {
        return params.beta * f_delayed / (1.0 + std::pow(f_delayed, params.power)) -
               params.gamma * f_now;
    };

    const double tau_steps = params.tau / h;

    std::vector<double> out;
    out.reserve(length);
    double f = params.initial_history;
    if (length > 0 && buffer_steps == 0) out.push_back(f);

    for (std::size_t step = 1; step <= total_steps; ++step) {
        // RK4 with the delayed argument interpolated at t - tau + {0, h/2, h}
        const double d0 = delayed_at(tau_steps);
        const double d1 = delayed_at(tau_steps - 0.5);
        const double d2 = delayed_at(tau_steps - 1.0);
        const double k1 = deriv(f, d0);
        const double k2 = deriv(f + 0.5 * h * k1, d1);
        const double k3 = deriv(f + 0.5 * h * k2, d1);
        const double k4 = deriv(f + h * k3, d2);
        f += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        head = (head + 1) % ring_size;
        ring[head] = f;

        if (step >= buffer_steps &&
            (step - buffer_steps) % static_cast<std::size_t>(per_sample) == 0) {
            if (out.size() < length) out.push_back(f);
        }
    }
    if (out.size() != length)
        throw Error("tasks", "mackey-glass length accounting failed");
    return out;
}

TaskDataset mackey_glass_dataset(const MackeyGlassParams& params, std::size_t fade_len,
                                 std::size_t train_len, std::size_t test_len,
                                 double dt_internal) {
    if (fade_len < 1 || train_len < 1 || test_len < 1)
        throw ContractError("all split lengths must be >= 1");
    const std::size_t total = fade_len + train_len + test_len;
    const std::size_t needed = total + static_cast<std::size_t>(params.delay);
    const std::vector<double> series = mackey_glass_series(params, needed, dt_internal);

    TaskDataset ds;
    ds.name = "mackey-glass";
    ds.dt = params.dt_sample;
    ds.inputs.assign(series.begin(), series.begin() + static_cast<std::ptrdiff_t>(total));
    ds.targets.resize(total);
    for (std::size_t k = 0; k < total; ++k)
        ds.targets[k] = series[k + static_cast<std::size_t>(params.delay)];
    ds.fade_end = fade_len;
    ds.train_end = fade_len + train_len;
    ds.test_end = total;
    ds.validate();
    return ds;
}

TaskDataset sine_square_dataset(std::size_t n_fade, std::size_t n_train, std::size_t n_test,
                                int n_ss, double omega_ss, std::uint64_t seed) {
    if (n_ss < 2 || n_ss % 2 != 0) throw ContractError("N_ss must be even and >= 2");
    if (!(omega_ss > 0.0)) throw ContractError("omega_ss must be positive");
    constexpr double two_pi = 6.283185307179586476925286766559;
    const std::size_t n_waveforms = n_fade + n_train + n_test;
    const std::size_t per = static_cast<std::size_t>(n_ss);
    const double dt = two_pi / (static_cast<double>(n_ss) * omega_ss);

    RngStream rng(seed, 0);
    TaskDataset ds;
    ds.name = "sine-square";
    ds.dt = dt;
    ds.inputs.reserve(n_waveforms * per);
    ds.targets.reserve(n_waveforms * per);

    for (std::size_t w = 0; w < n_waveforms; ++w) {
        const bool is_sine = (rng.next_u64() & 1ULL) != 0;
        for (std::size_t j = 0; j < per; ++j) {
            double v;
            if (is_sine) {
                v = 1.0 + std::sin(omega_ss * (static_cast<double>(j) * dt));
            } else {
                v = (j < per / 2) ? 2.0 : 0.0;
            }
            ds.inputs.push_back(v);
            ds.targets.push_back(is_sine ? 1.0 : 0.0);
        }
    }
    ds.fade_end = n_fade * per;
    ds.train_end = (n_fade + n_train) * per;
    ds.test_end = n_waveforms * per;
    ds.validate();
    return ds;
}

} // namespace qrc
