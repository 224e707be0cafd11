#include "qrc/reservoir.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qrc/parallel.hpp"

namespace qrc {

bool FeedbackConfig::any_active() const {
    for (double w : weights)
        if (w != 0.0) return true;
    return false;
}

void FeedbackConfig::validate(int n_readouts) const {
    if (channels.size() != weights.size())
        throw ContractError("feedback channels and weights must pair up");
    std::set<int> seen;
    for (int ch : channels) {
        if (ch < 1 || ch > n_readouts)
            throw ContractError("feedback channel " + std::to_string(ch) +
                                " outside 1.." + std::to_string(n_readouts));
        if (!seen.insert(ch).second)
            throw ContractError("duplicate feedback channel " + std::to_string(ch));
    }
    for (double w : weights)
        if (!std::isfinite(w)) throw ContractError("feedback weight must be finite");
}

double modified_input(double f_k, std::span<const double> readouts_at_k,
                      const FeedbackConfig& feedback) {
    if (feedback.channels.size() != feedback.weights.size())
        throw ContractError("feedback channels and weights must pair up");
    double f = f_k;
    for (std::size_t i = 0; i < feedback.channels.size(); ++i) {
        const int ch = feedback.channels[i];
        if (ch < 1 || static_cast<std::size_t>(ch) > readouts_at_k.size())
            throw ContractError("feedback channel " + std::to_string(ch) +
                                " missing from readouts");
        f += readouts_at_k[static_cast<std::size_t>(ch - 1)] * feedback.weights[i];
    }
    return f;
}

void ReadoutSeries::check_finite() const {
    for (std::size_t k = 0; k < steps; ++k)
        for (int n = 0; n < channels; ++n)
            if (!std::isfinite(at(k, n)))
                throw IntegratorError("non-finite readout at step " + std::to_string(k) +
                                      ", channel " + std::to_string(n + 1));
}

void ReadoutSeries::validate() const {
    check_finite();
    for (std::size_t k = 0; k < steps; ++k) {
        for (int n = 2; n < channels; ++n) {
            // atomic spin expectations live in [-1, 1]
            if (std::abs(at(k, n)) > 1.0 + 1e-6)
                throw IntegratorError("spin readout out of range at step " +
                                      std::to_string(k) + ", channel " + std::to_string(n + 1));
        }
    }
}

namespace {

struct ReadoutProbe {
    std::vector<CsrMatrix> ops;
    std::vector<std::string> labels;

    explicit ReadoutProbe(const SystemSpec& spec) {
        for (const auto& o : observables(spec)) {
            ops.push_back(CsrMatrix::from_dense(o.mat));
            labels.push_back(o.label);
        }
    }

    void measure(const CMatrix& rho, double* out) const {
        for (std::size_t n = 0; n < ops.size(); ++n)
            out[n] = ops[n].trace_product(rho.data()).real();
    }
};

double capped_input(double f, double cap, std::size_t k) {
    if (!std::isfinite(f) || std::abs(f) > cap)
        throw IntegratorError("modified input diverged at step " + std::to_string(k) +
                              " (|f| > " + std::to_string(cap) + ")");
    return f;
}

} // namespace

ReadoutSeries run_deterministic(const SystemSpec& spec, const ReservoirParams& params,
                                std::span<const double> inputs,
                                const FeedbackConfig& feedback, const RunOptions& opts) {
    if (inputs.empty()) throw ContractError("input series must be nonempty");
    feedback.validate(spec.readout_count());

    const LindbladGenerator gen = LindbladGenerator::for_reservoir(spec, params);
    const ReadoutProbe probe(spec);
    LindbladWorkspace ws;

    ReadoutSeries series;
    series.steps = inputs.size();
    series.channels = spec.readout_count();
    series.labels = probe.labels;
    series.source = ReadoutSeries::Source::deterministic;
    series.values.assign(series.steps * static_cast<std::size_t>(series.channels), 0.0);

    DensityMatrix rho =
        (opts.initial != nullptr) ? *opts.initial : DensityMatrix::ground(spec);
    if (rho.m.rows() != static_cast<std::size_t>(spec.dim))
        throw ContractError("initial state dimension mismatch");
    std::vector<double> current(static_cast<std::size_t>(series.channels), 0.0);
    probe.measure(rho.m, current.data()); // readouts at t_0 from the initial state

    const double dt = 1.0; // internal clock: one unit per input interval
    for (std::size_t k = 0; k < series.steps; ++k) {
        const double f =
            capped_input(modified_input(inputs[k], current, feedback), opts.input_cap, k);
        int substeps = opts.substeps;
        if (opts.auto_substeps)
            substeps = std::max(substeps, gen.rk4_substep_floor(dt, std::abs(f)));
        rho = evolve_deterministic(rho, gen, [f](double) { return f; }, 0.0, dt, substeps,
                                   ws, opts.diag);
        probe.measure(rho.m, current.data());
        std::copy(current.begin(), current.end(),
                  series.values.begin() + static_cast<std::ptrdiff_t>(
                                              k * static_cast<std::size_t>(series.channels)));
        if (opts.modified_inputs != nullptr) opts.modified_inputs->push_back(f);
        if (opts.on_state) opts.on_state(k, rho);
    }
    series.check_finite();
    return series;
}

namespace {

// One full-length conditional trajectory with a fixed modified-input series.
ReadoutSeries single_trajectory(const SystemSpec& spec, const LindbladGenerator& gen,
                                const ReadoutProbe& probe, std::span<const double> f_series,
                                std::uint64_t seed, std::uint64_t stream,
                                const RunOptions& opts) {
    LindbladWorkspace ws;
    RngStream rng(seed, stream);

    ReadoutSeries series;
    series.steps = f_series.size();
    series.channels = spec.readout_count();
    series.labels = probe.labels;
    series.source = ReadoutSeries::Source::trajectory_average;
    series.trajectories = 1;
    series.values.assign(series.steps * static_cast<std::size_t>(series.channels), 0.0);

    DensityMatrix rho = DensityMatrix::ground(spec);
    const double dt = 1.0;
    for (std::size_t k = 0; k < series.steps; ++k) {
        const double f = f_series[k];
        int substeps = opts.stochastic_substeps;
        if (opts.auto_substeps)
            substeps = std::max(substeps, gen.em_substep_floor(dt, std::abs(f)));
        StochasticInterval iv = evolve_stochastic(rho, gen, [f](double) { return f; }, 0.0,
                                                  dt, substeps, rng, ws, opts.diag);
        rho = std::move(iv.rho);
        probe.measure(rho.m,
                      series.values.data() + k * static_cast<std::size_t>(series.channels));
    }
    return series;
}

} // namespace

ReadoutSeries run_trajectory_protocol(const SystemSpec& spec, const ReservoirParams& params,
                                      std::span<const double> inputs,
                                      const FeedbackConfig& feedback, int m_total,
                                      std::uint64_t seed, const RunOptions& opts) {
    if (m_total < 1) throw ContractError("m_total must be >= 1");
    if (inputs.empty()) throw ContractError("input series must be nonempty");
    feedback.validate(spec.readout_count());

    if (!feedback.any_active()) {
        // Trajectories decouple; average the independent ensemble.
        const auto ensemble = run_stochastic_ensemble(spec, params, inputs, m_total, seed, opts);
        ReadoutSeries mean = ensemble.front();
        for (std::size_t m = 1; m < ensemble.size(); ++m)
            for (std::size_t i = 0; i < mean.values.size(); ++i)
                mean.values[i] += ensemble[m].values[i];
        const double inv = 1.0 / static_cast<double>(m_total);
        for (auto& v : mean.values) v *= inv;
        mean.trajectories = m_total;
        mean.check_finite();
        return mean;
    }

    const LindbladGenerator gen = LindbladGenerator::for_reservoir(spec, params);
    const ReadoutProbe probe(spec);
    const std::size_t steps = inputs.size();
    const std::size_t chans = static_cast<std::size_t>(spec.readout_count());

    std::vector<double> running_mean(steps * chans, 0.0); // mean over trajectories 1..M-1
    std::vector<double> sum(steps * chans, 0.0);
    std::vector<double> f_series(steps, 0.0);

    // readouts at t_0 are those of the shared initial state
    std::vector<double> initial(chans, 0.0);
    probe.measure(DensityMatrix::ground(spec).m, initial.data());

    for (int m = 1; m <= m_total; ++m) {
        for (std::size_t k = 0; k < steps; ++k) {
            // feedback for step k uses the averaged readouts at t_k
            std::span<const double> xbar =
                (k == 0) ? std::span<const double>{initial}
                         : std::span<const double>{running_mean.data() + (k - 1) * chans,
                                                   chans};
            const double f = (m == 1) ? inputs[k] : modified_input(inputs[k], xbar, feedback);
            f_series[k] = capped_input(f, opts.input_cap, k);
        }
        const ReadoutSeries traj = single_trajectory(spec, gen, probe, f_series, seed,
                                                     static_cast<std::uint64_t>(m - 1), opts);
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += traj.values[i];
        const double inv = 1.0 / static_cast<double>(m);
        for (std::size_t i = 0; i < sum.size(); ++i) running_mean[i] = sum[i] * inv;
    }

    ReadoutSeries mean;
    mean.steps = steps;
    mean.channels = spec.readout_count();
    mean.labels = probe.labels;
    mean.source = ReadoutSeries::Source::trajectory_average;
    mean.trajectories = m_total;
    mean.values = std::move(running_mean);
    mean.check_finite();
    return mean;
}

std::vector<ReadoutSeries> run_stochastic_ensemble(const SystemSpec& spec,
                                                   const ReservoirParams& params,
                                                   std::span<const double> inputs,
                                                   int m_total, std::uint64_t seed,
                                                   const RunOptions& opts) {
    if (m_total < 1) throw ContractError("m_total must be >= 1");
    const LindbladGenerator gen = LindbladGenerator::for_reservoir(spec, params);
    const ReadoutProbe probe(spec);

    std::vector<ReadoutSeries> out(static_cast<std::size_t>(m_total));
    std::vector<EvolveDiagnostics> diags(static_cast<std::size_t>(m_total));
    parallel_for(static_cast<std::size_t>(m_total), std::max<std::size_t>(opts.workers, 1),
                 [&](std::size_t m) {
                     RunOptions local = opts;
                     local.diag = &diags[m];
                     local.modified_inputs = nullptr;
                     out[m] = single_trajectory(spec, gen, probe, inputs, seed,
                                                static_cast<std::uint64_t>(m), local);
                 });
    if (opts.diag != nullptr)
        for (const auto& d : diags) opts.diag->merge(d);
    return out;
}

namespace {

FeatureMatrix features_common(const ReadoutSeries& readouts, bool quadratic) {
    const std::size_t rows = readouts.steps;
    const std::size_t r = static_cast<std::size_t>(readouts.channels);
    const std::size_t cols = quadratic ? r + r * (r + 1) / 2 : r;

    FeatureMatrix f;
    f.rows = rows;
    f.cols = cols;
    f.v.resize(rows * cols);
    for (std::size_t k = 0; k < rows; ++k) {
        const double* x = readouts.values.data() + k * r;
        double* o = f.v.data() + k * cols;
        std::size_t idx = 0;
        for (std::size_t a = 0; a < r; ++a) o[idx++] = x[a];
        if (quadratic)
            for (std::size_t a = 0; a < r; ++a)
                for (std::size_t b = a; b < r; ++b) o[idx++] = x[a] * x[b];
    }
    return f;
}

} // namespace

FeatureMatrix polynomial_features(const ReadoutSeries& readouts) {
    return features_common(readouts, true);
}

FeatureMatrix linear_features(const ReadoutSeries& readouts) {
    return features_common(readouts, false);
}

} // namespace qrc
