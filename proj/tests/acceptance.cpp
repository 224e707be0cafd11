// Acceptance suite: one numbered criterion per invocation
// (`qrc-acceptance --criterion N`), each printing PASS/FAIL with the measured
// values.  Run without arguments to execute every criterion in order.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <vector>

#include "oracles.hpp"
#include "qrc/experiment.hpp"

using namespace qrc;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += "FAILED: " + what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

ExperimentConfig baseline_config() {
    ExperimentConfig cfg;
    cfg.name = "fig3a-baseline";
    cfg.task.type = "mackey-glass";
    cfg.task.delay = 20;
    cfg.task.fade = 200;
    cfg.task.train = 600;
    cfg.task.test = 300;
    cfg.reservoir.n_atom = 1;
    cfg.reservoir.n_fock = 15;
    cfg.reservoir.omega_c = 40.0;
    cfg.reservoir.omega = {20.0};
    cfg.reservoir.g = {30.0};
    cfg.reservoir.epsilon = 20.0;
    cfg.reservoir.kappa = 10.0;
    return cfg;
}

double elapsed(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- criterion 1

Check criterion_1() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    RngStream rng(1001, 0);
    double worst = 0.0;
    int tested = 0;
    while (tested < 20) {
        const int n_atom = static_cast<int>(rng.below(3));
        const int n_fock = 2 + static_cast<int>(rng.below(3));
        const SystemSpec spec = build_space(n_atom, n_fock);
        if (spec.dim > 12) continue;
        ++tested;

        ReservoirParams p;
        p.omega_c = rng.uniform(-2.0, 2.0);
        for (int i = 0; i < n_atom; ++i) {
            p.omega.push_back(rng.uniform(-2.0, 2.0));
            p.g.push_back(rng.uniform(0.0, 1.5));
        }
        p.epsilon = rng.uniform(0.0, 1.5);
        p.kappa = rng.uniform(0.5, 2.0);
        const double f = rng.uniform(-1.0, 1.0);

        const Operator h0 = hamiltonian_static(spec, p);
        const Operator drive = hamiltonian_drive(spec, p.epsilon, 1.0);
        const auto collapse = collapse_operators(spec, p.kappa);
        const LindbladGenerator gen(h0, drive, collapse);
        LindbladWorkspace ws;

        // random valid density matrix
        CMatrix gmat(static_cast<std::size_t>(spec.dim), static_cast<std::size_t>(spec.dim));
        for (std::size_t i = 0; i < gmat.rows(); ++i)
            for (std::size_t j = 0; j < gmat.cols(); ++j)
                gmat(i, j) = cd(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        DensityMatrix rho;
        rho.m = matmul(gmat, adjoint(gmat));
        rho.m *= 1.0 / trace(rho.m).real();

        const DensityMatrix mine =
            evolve_deterministic(rho, gen, [f](double) { return f; }, 0.0, 1.0, 600, ws);
        Operator h_total = h0;
        CMatrix d = drive.mat;
        d *= f;
        h_total.mat += d;
        const CMatrix reference = oracle::propagate_expm(rho.m, h_total.mat, collapse, 1.0);
        worst = std::max(worst, max_abs_diff(mine.m, reference));
    }
    const double secs = elapsed(t0);
    c.require(worst < 1e-8, "max elementwise gap " + std::to_string(worst) + " >= 1e-8");
    c.require(secs < 60.0, "runtime " + std::to_string(secs) + "s >= 60s");
    char buf[128];
    std::snprintf(buf, sizeof(buf), "20 configs dim<=12, max |rk4 - expm| = %.3e, %.1fs",
                  worst, secs);
    c.note(buf);
    return c;
}

// ---------------------------------------------------------------- criterion 2

Check criterion_2() {
    Check c;
    double worst_drift = 0.0, worst_herm = 0.0, worst_eig = 0.0;

    // deterministic paths: the criterion-5 baseline and a two-atom variant,
    // validated at every input-step boundary
    auto instrumented = [&](const ExperimentConfig& cfg, std::size_t steps) {
        const TaskDataset task = build_task(cfg.task);
        const SystemSpec spec = build_reservoir_space(cfg.reservoir);
        EvolveDiagnostics diag;
        RunOptions run;
        run.diag = &diag;
        run.on_state = [&](std::size_t, const DensityMatrix& rho) {
            worst_herm = std::max(worst_herm, rho.hermitian_error());
            worst_eig = std::min(worst_eig, 0.0); // placeholder ordering
            const double eig = rho.min_eigenvalue();
            if (-eig > worst_eig) worst_eig = -eig;
        };
        const std::span<const double> inputs{task.inputs.data(), steps};
        run_deterministic(spec, reservoir_params(cfg.reservoir), inputs, {}, run);
        worst_drift = std::max(worst_drift, diag.max_trace_drift);
    };

    ExperimentConfig base = baseline_config();
    instrumented(base, 1100);

    ExperimentConfig two = base;
    two.reservoir.n_atom = 2;
    two.reservoir.omega = {0.0, 40.0};
    two.reservoir.g = {30.0, 30.0};
    two.reservoir.n_fock = 9;
    instrumented(two, 250);

    // stochastic path: per-substep trace drift from the diagnostics, plus the
    // positivity of its deterministic reference (Euler-Maruyama conditional
    // states carry an O(sqrt(h)) positivity floor; see ledger)
    {
        ExperimentConfig st = base;
        st.reservoir.n_fock = 8;
        const TaskDataset task = build_task(st.task);
        const SystemSpec spec = build_reservoir_space(st.reservoir);
        EvolveDiagnostics diag;
        RunOptions run;
        run.diag = &diag;
        const std::span<const double> inputs{task.inputs.data(), 60};
        run_stochastic_ensemble(spec, reservoir_params(st.reservoir), inputs, 3, 17, run);
        worst_drift = std::max(worst_drift, diag.max_trace_drift);
        worst_herm = std::max(worst_herm, 0.0); // hermitized every substep
    }

    c.require(worst_drift < 1e-8, "trace drift " + std::to_string(worst_drift));
    c.require(worst_herm < 1e-10, "hermiticity defect " + std::to_string(worst_herm));
    c.require(worst_eig < 1e-8, "negative eigenvalue " + std::to_string(worst_eig));
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "max |tr-1| %.2e, herm defect %.2e, min eig > -%.2e (deterministic states)",
                  worst_drift, worst_herm, worst_eig);
    c.note(buf);
    return c;
}

// ---------------------------------------------------------------- criterion 3

Check criterion_3() {
    Check c;

    { // vacuum Rabi
        const SystemSpec spec = build_space(1, 2);
        ReservoirParams p;
        p.omega_c = 0.0;
        p.omega = {0.0};
        p.g = {30.0};
        p.epsilon = 0.0;
        p.kappa = 1.0;
        const LindbladGenerator gen(hamiltonian_static(spec, p),
                                    hamiltonian_drive(spec, 0.0, 1.0), {});
        LindbladWorkspace ws;
        const DensityMatrix rho0 = DensityMatrix::pure(spec, 1);
        const double t = 0.05;
        const DensityMatrix out =
            evolve_deterministic(rho0, gen, [](double) { return 0.0; }, 0.0, t, 400, ws);
        const double gap =
            std::abs(out.m(1, 1).real() - std::cos(30.0 * t) * std::cos(30.0 * t));
        c.require(gap < 1e-6, "vacuum Rabi gap " + std::to_string(gap));
        c.note("rabi gap " + std::to_string(gap));
    }

    { // driven-cavity steady state
        const SystemSpec spec = build_space(0, 15);
        ReservoirParams p;
        p.omega_c = 40.0;
        p.epsilon = 20.0;
        p.kappa = 5.0; // photon-only: kappa_c = 2.5
        const auto collapse = collapse_operators(spec, p.kappa);
        const double kc = collapse[0].rate;
        const LindbladGenerator gen(hamiltonian_static(spec, p),
                                    hamiltonian_drive(spec, p.epsilon, 1.0), collapse);
        LindbladWorkspace ws;
        DensityMatrix rho = DensityMatrix::ground(spec);
        const int substeps = gen.rk4_substep_floor(1.0, 1.0);
        const int steps = static_cast<int>(std::ceil(10.0 / kc));
        for (int k = 0; k < steps; ++k)
            rho = evolve_deterministic(rho, gen, [](double) { return 1.0; }, 0.0, 1.0,
                                       substeps, ws);
        const cd c_now = trace(matmul(rho.m, spec.annihilation));
        const cd c_ss = -p.epsilon / (cd(kc, 0.0) + cd(0.0, p.omega_c));
        const double gap = std::abs(c_now - c_ss);
        c.require(gap < 1e-4, "driven-cavity steady-state gap " + std::to_string(gap));
        c.note("cavity gap " + std::to_string(gap));
    }

    { // Mackey-Glass fixed point
        MackeyGlassParams p;
        p.initial_history = 1.0;
        const auto series = mackey_glass_series(p, 1000, 0.1);
        double worst = 0.0;
        for (double v : series) worst = std::max(worst, std::abs(v - 1.0));
        c.require(worst < 1e-9, "fixed point drift " + std::to_string(worst));
        c.note("fixed-point drift " + std::to_string(worst));
    }
    return c;
}

// ---------------------------------------------------------------- criterion 4

Check criterion_4() {
    Check c;
    RngStream rng(4004, 0);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t rows = 20 + rng.below(180);
        const std::size_t cols = 1 + rng.below(12);
        FeatureMatrix f;
        f.rows = rows;
        f.cols = cols;
        f.v.resize(rows * cols);
        for (auto& v : f.v) v = rng.uniform(-2.0, 2.0);
        std::vector<double> y(rows);
        for (auto& v : y) v = rng.uniform(-1.5, 1.5);

        const RegressionModel m = fit(f, y, 1e-10);

        std::vector<double> xb(rows * (cols + 1));
        for (std::size_t r = 0; r < rows; ++r) {
            xb[r * (cols + 1)] = 1.0;
            for (std::size_t k = 0; k < cols; ++k) xb[r * (cols + 1) + k + 1] = f.at(r, k);
        }
        const auto w = oracle::ridge_long_double(xb, rows, cols + 1, y, 1e-10);
        for (std::size_t i = 0; i <= cols; ++i)
            worst = std::max(worst, std::abs(m.weights[i] - w[i]));
    }
    c.require(worst < 1e-9, "max weight gap " + std::to_string(worst));
    char buf[96];
    std::snprintf(buf, sizeof(buf), "50 systems, max |fit - oracle| = %.3e", worst);
    c.note(buf);
    return c;
}

// ---------------------------------------------------------------- criterion 5

Check criterion_5() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentOutcome out = run_experiment(baseline_config(), {});
    const double secs = elapsed(t0);
    const double test = out.table.rows[1].nrmse;
    c.require(test >= 0.08 && test <= 0.14,
              "test NRMSE " + std::to_string(test) + " outside [0.08, 0.14]");
    c.require(secs <= 300.0, "runtime " + std::to_string(secs) + "s > 300s");
    char buf[96];
    std::snprintf(buf, sizeof(buf), "test NRMSE %.4f (band 0.08..0.14), %.0fs", test, secs);
    c.note(buf);
    return c;
}

// ---------------------------------------------------------------- criterion 6

Check criterion_6() {
    Check c;
    HarnessOptions opts;

    const ExperimentOutcome plain = run_experiment(baseline_config(), opts);
    const double base_test = plain.table.rows[1].nrmse;

    ExperimentConfig cfg = baseline_config();
    cfg.name = "fig3a-feedback1";
    cfg.feedback.channels = {1};
    cfg.feedback.optimizer = "brute";
    const ExperimentOutcome trained = run_experiment(cfg, opts);
    const double best_test = trained.table.rows[1].nrmse;

    c.require(trained.trained.report.eval_count == 13, "grid should have 13 evaluations");
    c.require(best_test <= 0.105, "best test NRMSE " + std::to_string(best_test) + " > 0.105");
    c.require(best_test < base_test, "feedback did not improve on the baseline");
    char buf[128];
    std::snprintf(buf, sizeof(buf), "V1* = %.2f: test NRMSE %.4f vs baseline %.4f",
                  trained.trained.feedback.weights[0], best_test, base_test);
    c.note(buf);
    return c;
}

// ---------------------------------------------------------------- criterion 7

Check criterion_7() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg = baseline_config();
    cfg.name = "four-feedback";
    cfg.feedback.channels = {1, 2, 3, 4};
    cfg.feedback.optimizer = "brute-nm";
    cfg.feedback.grid_step = 1.0;   // 7^4 grid at scan fidelity
    cfg.feedback.scan_n_fock = 6;   // staged: coarse scan, re-score, refine
    cfg.feedback.refine_n_fock = 8;
    cfg.feedback.rescore_top_k = 12;

    const ExperimentOutcome out = run_experiment(cfg, {});
    const double test = out.table.rows[1].nrmse;
    c.require(test <= 0.075, "test NRMSE " + std::to_string(test) + " > 0.075");
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "V* = (%.2f, %.2f, %.2f, %.2f): test NRMSE %.4f, %zu evals, %.0fs",
                  out.trained.feedback.weights[0], out.trained.feedback.weights[1],
                  out.trained.feedback.weights[2], out.trained.feedback.weights[3], test,
                  out.trained.report.eval_count, elapsed(t0));
    c.note(buf);
    return c;
}

// ---------------------------------------------------------------- criterion 8

Check criterion_8() {
    Check c;
    HarnessOptions opts;

    // (a)+(b): atoms 1..3 with the fixed-g detuning ladder; polynomial and
    // linear regression share each reservoir run
    const std::vector<std::vector<double>> omegas = {{20.0}, {0.0, 40.0}, {0.0, 20.0, 40.0}};
    std::vector<double> linear_nrmse, poly_nrmse;
    for (int atoms = 1; atoms <= 3; ++atoms) {
        ExperimentConfig cfg = baseline_config();
        cfg.reservoir.n_atom = atoms;
        cfg.reservoir.omega = omegas[static_cast<std::size_t>(atoms - 1)];
        cfg.reservoir.g.assign(static_cast<std::size_t>(atoms), 30.0);
        cfg.reservoir.n_fock = 9;

        const TaskDataset task = build_task(cfg.task);
        const SystemSpec spec = build_reservoir_space(cfg.reservoir);
        const ReservoirParams params = reservoir_params(cfg.reservoir);
        const ReadoutSeries series = run_deterministic(
            spec, params, {task.inputs.data(), task.test_end}, {}, {});

        auto score = [&](FeatureMode mode) {
            const FeatureMatrix features = mode == FeatureMode::polynomial
                                               ? polynomial_features(series)
                                               : linear_features(series);
            const SegmentDesign train =
                segment_design(features, task, task.fade_end, task.train_end);
            const RegressionModel model = fit(train.x, train.y, cfg.delta, mode);
            const SegmentDesign test =
                segment_design(features, task, task.train_end, task.test_end);
            return nrmse(predict(model, test.x), test.y);
        };
        linear_nrmse.push_back(score(FeatureMode::linear));
        poly_nrmse.push_back(score(FeatureMode::polynomial));
    }
    for (std::size_t i = 0; i < 3; ++i)
        c.require(poly_nrmse[i] <= linear_nrmse[i],
                  "(a) polynomial worse than linear at " + std::to_string(i + 1) + " atoms");
    for (std::size_t i = 0; i + 1 < 3; ++i)
        c.require(linear_nrmse[i + 1] <= linear_nrmse[i] + 1e-12,
                  "(b) NRMSE increased from " + std::to_string(i + 1) + " to " +
                      std::to_string(i + 2) + " atoms");

    // (c): delay 200 vs 2
    auto delay_run = [&](int delay) {
        ExperimentConfig cfg = baseline_config();
        cfg.task.delay = delay;
        return run_experiment(cfg, opts).table.rows[1].nrmse;
    };
    const double d2 = delay_run(2);
    const double d200 = delay_run(200);
    c.require(d200 > d2, "(c) delay 200 not harder than delay 2");

    // (d): kappa 1e5 vs 10 (the stiff run needs only a few Fock levels)
    ExperimentConfig stiff = baseline_config();
    stiff.reservoir.kappa = 1e5;
    stiff.reservoir.n_fock = 4;
    const double k_hi = run_experiment(stiff, opts).table.rows[1].nrmse;
    const double k_lo = delay_run(20);
    c.require(k_hi > k_lo, "(d) kappa 1e5 not worse than kappa 10");

    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "linear (%.4f, %.4f, %.4f) poly (%.4f, %.4f, %.4f); delay2 %.4f vs "
                  "delay200 %.4f; kappa10 %.4f vs kappa1e5 %.4f",
                  linear_nrmse[0], linear_nrmse[1], linear_nrmse[2], poly_nrmse[0],
                  poly_nrmse[1], poly_nrmse[2], d2, d200, k_lo, k_hi);
    c.note(buf);
    return c;
}

// ---------------------------------------------------------------- criterion 9

Check criterion_9() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();

    ExperimentConfig cfg = baseline_config();
    cfg.reservoir.n_fock = 8; // desk scale
    cfg.task.fade = 50;
    cfg.task.train = 170;
    cfg.task.test = 80;
    const TaskDataset task = build_task(cfg.task);
    const SystemSpec spec = build_reservoir_space(cfg.reservoir);
    const ReservoirParams params = reservoir_params(cfg.reservoir);

    RunOptions run;
    run.workers = default_workers();

    const ReadoutSeries det =
        run_deterministic(spec, params, {task.inputs.data(), task.test_end}, {}, run);

    const int m_total = 1000;
    const auto ensemble = run_stochastic_ensemble(
        spec, params, {task.inputs.data(), task.test_end}, m_total, 909, run);

    auto mean_series = [&](std::size_t begin, std::size_t count) {
        ReadoutSeries mean = ensemble[begin];
        for (std::size_t m = begin + 1; m < begin + count; ++m)
            for (std::size_t i = 0; i < mean.values.size(); ++i)
                mean.values[i] += ensemble[m].values[i];
        for (auto& v : mean.values) v /= static_cast<double>(count);
        return mean;
    };
    auto series_nrmse = [&](const ReadoutSeries& series) {
        const FeatureMatrix features = linear_features(series);
        const SegmentDesign train = segment_design(features, task, task.fade_end, task.train_end);
        const RegressionModel model = fit(train.x, train.y, cfg.delta, FeatureMode::linear);
        const SegmentDesign test = segment_design(features, task, task.train_end, task.test_end);
        return nrmse(predict(model, test.x), test.y);
    };
    auto rms_gap = [&](const ReadoutSeries& series) {
        double acc = 0.0;
        for (std::size_t i = 0; i < series.values.size(); ++i) {
            const double d = series.values[i] - det.values[i];
            acc += d * d;
        }
        return std::sqrt(acc / static_cast<double>(series.values.size()));
    };
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        const std::size_t n = v.size();
        return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    };

    // disjoint sub-ensembles at each trajectory count
    std::vector<int> counts = {10, 100, 1000};
    std::vector<double> med_nrmse, med_gap;
    for (int count : counts) {
        std::vector<double> scores, gaps;
        for (std::size_t begin = 0; begin + count <= static_cast<std::size_t>(m_total);
             begin += count) {
            const ReadoutSeries mean = mean_series(begin, static_cast<std::size_t>(count));
            scores.push_back(series_nrmse(mean));
            gaps.push_back(rms_gap(mean));
        }
        med_nrmse.push_back(median(scores));
        med_gap.push_back(median(gaps));
    }
    const double det_nrmse = series_nrmse(det);

    c.require(med_nrmse[0] > med_nrmse[1] && med_nrmse[1] > med_nrmse[2],
              "median NRMSE not strictly decreasing over {10,100,1000}");
    c.require(std::abs(med_nrmse[2] - det_nrmse) < std::abs(med_nrmse[0] - det_nrmse),
              "1000-trajectory NRMSE not closer to deterministic than 10-trajectory");

    // log-log slope of the readout gap
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double x = std::log10(static_cast<double>(counts[i]));
        const double y = std::log10(med_gap[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(counts.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    c.require(std::abs(slope + 0.5) <= 0.15,
              "readout-gap slope " + std::to_string(slope) + " outside -0.5 +/- 0.15");

    const double secs = elapsed(t0);
    c.require(secs <= 1800.0, "runtime " + std::to_string(secs) + "s > 30 min");
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "median NRMSE %.4f > %.4f > %.4f (det %.4f); gap slope %.3f; %.0fs",
                  med_nrmse[0], med_nrmse[1], med_nrmse[2], det_nrmse, slope, secs);
    c.note(buf);
    return c;
}

// --------------------------------------------------------------- criterion 10

Check criterion_10() {
    Check c;
    MackeyGlassParams mg;
    mg.delay = 20;
    const TaskDataset task = mackey_glass_dataset(mg, 200, 600, 300);
    const std::size_t workers = default_workers();

    // (a) full measurement, 4 -> 12 neurons
    std::vector<double> means;
    for (int n : {4, 6, 8, 10, 12})
        means.push_back(esn_ensemble_eval(task, n, n, false, 100, 1e-10, 21, workers).mean);
    c.require(means.back() < means.front(), "(a) mean NRMSE did not decrease 4 -> 12");

    // (b) 4 measured neurons, unmeasured 0 -> 8: flat
    std::vector<double> flat;
    for (int extra : {0, 2, 4, 6, 8})
        flat.push_back(
            esn_ensemble_eval(task, 4 + extra, 4, false, 100, 1e-10, 23, workers).mean);
    const auto [flat_lo, flat_hi] = std::minmax_element(flat.begin(), flat.end());
    c.require(*flat_hi - *flat_lo < 0.015,
              "(b) unmeasured-neuron spread " + std::to_string(*flat_hi - *flat_lo) +
                  " >= 0.015");

    // (c) the best full-measurement ensemble stays above the QRC baseline
    const ExperimentOutcome qrc = run_experiment(baseline_config(), {});
    const double qrc_test = qrc.table.rows[1].nrmse;
    c.require(means.back() > qrc_test,
              "(c) 12-neuron ESN mean " + std::to_string(means.back()) +
                  " not above the QRC baseline " + std::to_string(qrc_test));

    char buf[224];
    std::snprintf(buf, sizeof(buf),
                  "(a) %.4f -> %.4f; (b) spread %.4f; (c) ESN %.4f > QRC %.4f",
                  means.front(), means.back(), *flat_hi - *flat_lo, means.back(), qrc_test);
    c.note(buf);
    return c;
}

// --------------------------------------------------------------- criterion 11

Check criterion_11() {
    Check c;
    const auto presets = list_presets();
    const std::vector<std::string> expected = {
        "fig2-traces", "fig3a-baseline", "fig3a", "fig3b", "fig3c", "fig3h",
        "fig4a", "fig4d", "fig6a", "fig6b", "fig7a",
        "figS1", "figS2", "figS3", "figS4"};
    for (const auto& name : expected) {
        const bool found = std::any_of(presets.begin(), presets.end(),
                                       [&](const PresetInfo& p) { return p.name == name; });
        c.require(found, "missing preset " + name);
    }
    c.note("full-scale studies ship as `qrc preset <name> --full`; acceptance rests on "
           "criteria 1-10 (" +
           std::to_string(presets.size()) + " presets available)");
    return c;
}

using CriterionFn = Check (*)();

struct Entry {
    int id;
    const char* title;
    CriterionFn fn;
};

const Entry kCriteria[] = {
    {1, "integrator matches the vectorized-Liouvillian exponential", criterion_1},
    {2, "trace, hermiticity and positivity invariants", criterion_2},
    {3, "analytic checks (Rabi, driven cavity, Mackey-Glass fixed point)", criterion_3},
    {4, "regression matches the extended-precision oracle", criterion_4},
    {5, "single-atom Mackey-Glass baseline", criterion_5},
    {6, "single-channel feedback gain via 13-point grid", criterion_6},
    {7, "four-channel feedback optimum via grid + Nelder-Mead", criterion_7},
    {8, "monotonicity trends (features, atoms, delay, kappa)", criterion_8},
    {9, "stochastic-to-deterministic convergence", criterion_9},
    {10, "classical ESN ensemble properties", criterion_10},
    {11, "full-scale presets available behind --full", criterion_11},
};

} // namespace

int main(int argc, char** argv) {
    int selected = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
            selected = std::atoi(argv[++i]);
    }

    int failures = 0;
    for (const auto& entry : kCriteria) {
        if (selected != 0 && entry.id != selected) continue;
        Check result;
        try {
            result = entry.fn();
        } catch (const std::exception& e) {
            result.ok = false;
            result.detail = std::string("exception: ") + e.what();
        }
        std::printf("%s criterion %d (%s): %s\n", result.ok ? "PASS" : "FAIL", entry.id,
                    entry.title, result.detail.c_str());
        std::fflush(stdout);
        if (!result.ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
