// Named experiment presets reproducing the benchmark studies at desk scale,
// with heavier variants behind `full`.

#include <cmath>
#include <filesystem>

#include "qrc/experiment.hpp"

namespace qrc {

namespace {

ExperimentConfig single_atom_base() {
    ExperimentConfig cfg;
    cfg.name = "single-atom";
    cfg.task.type = "mackey-glass";
    cfg.task.delay = 20;
    cfg.reservoir.n_atom = 1;
    cfg.reservoir.n_fock = 15;
    cfg.reservoir.omega = {20.0};
    cfg.reservoir.g = {30.0};
    cfg.reservoir.omega_c = 40.0;
    cfg.reservoir.epsilon = 20.0;
    cfg.reservoir.kappa = 10.0;
    return cfg;
}

// detuning ladders used when the atom count grows at fixed coupling
const std::vector<std::vector<double>> kOmegaLadder = {
    {20.0}, {0.0, 40.0}, {0.0, 20.0, 40.0}, {0.0, 10.0, 30.0, 40.0},
    {0.0, 10.0, 20.0, 30.0, 40.0}};
// coupling ladders used when the atom count grows at fixed detuning
const std::vector<std::vector<double>> kGLadder = {
    {30.0}, {10.0, 50.0}, {10.0, 30.0, 50.0}, {10.0, 20.0, 40.0, 50.0},
    {10.0, 20.0, 30.0, 40.0, 50.0}};

SweepSpec atoms_sweep(bool fixed_g, int max_atoms, const std::vector<int>& n_fock) {
    SweepSpec sweep;
    sweep.axis = "atoms";
    for (int n = 1; n <= max_atoms; ++n) {
        sweep.values.push_back(n);
        if (fixed_g) {
            sweep.omega_ladder.push_back(kOmegaLadder[static_cast<std::size_t>(n - 1)]);
            sweep.g_ladder.push_back(std::vector<double>(static_cast<std::size_t>(n), 30.0));
        } else {
            sweep.omega_ladder.push_back(std::vector<double>(static_cast<std::size_t>(n), 20.0));
            sweep.g_ladder.push_back(kGLadder[static_cast<std::size_t>(n - 1)]);
        }
    }
    sweep.n_fock = n_fock;
    sweep.n_fock.resize(sweep.values.size(), n_fock.empty() ? 0 : n_fock.back());
    return sweep;
}

ResultTable merge(ResultTable a, const ResultTable& b) {
    a.rows.insert(a.rows.end(), b.rows.begin(), b.rows.end());
    for (const auto& t : b.traces) a.traces.push_back(t);
    return a;
}

ResultTable preset_fig2(bool full, const HarnessOptions& opts) {
    // single-atom input/readout traces with all four feedback channels trained
    ExperimentConfig cfg = single_atom_base();
    cfg.name = "fig2-traces";
    cfg.traces = true;
    cfg.feedback.channels = {1, 2, 3, 4};
    cfg.feedback.optimizer = "brute-nm";
    cfg.feedback.grid_step = full ? 0.5 : 1.0;
    cfg.feedback.scan_n_fock = full ? 0 : 6;
    cfg.feedback.refine_n_fock = full ? 0 : 10;
    cfg.feedback.rescore_top_k = 10;
    ExperimentOutcome outcome = run_experiment(cfg, opts);

    if (!opts.out_dir.empty() && !outcome.pipeline.series.values.empty()) {
        // per-channel readout traces
        const auto& series = outcome.pipeline.series;
        std::vector<SvgSeries> lines;
        const char* colors[] = {"#1f6fb2", "#d62728", "#2ca02c", "#9467bd"};
        for (int n = 0; n < series.channels; ++n) {
            SvgSeries line{series.labels[static_cast<std::size_t>(n)], {}, {},
                           colors[n % 4]};
            for (std::size_t k = 0; k < series.steps; ++k) {
                line.x.push_back(static_cast<double>(k + 1));
                line.y.push_back(series.at(k, n));
            }
            lines.push_back(std::move(line));
        }
        SvgOptions svg;
        svg.title = "single-atom readouts, 4 trained feedback channels";
        svg.x_label = "k";
        svg.y_label = "expectation value";
        emit_svg(lines, svg, opts.out_dir + "/fig2-readouts.svg");
    }
    return outcome.table;
}

ResultTable preset_fig3_sweep(bool fixed_g, bool full, const HarnessOptions& opts) {
    ExperimentConfig cfg = single_atom_base();
    cfg.name = fixed_g ? "fig3a" : "fig3b";
    const int max_atoms = full ? 5 : 3;
    // desk scale trades Fock headroom for runtime on the larger spaces
    const std::vector<int> n_fock =
        full ? std::vector<int>{15, 15, 15, 12, 10} : std::vector<int>{15, 10, 9};
    const SweepSpec sweep = atoms_sweep(fixed_g, max_atoms, n_fock);

    ResultTable out;
    for (const char* mode : {"linear", "polynomial"}) {
        ExperimentConfig variant = cfg;
        variant.regression = mode;
        variant.name = cfg.name + "-" + mode;
        out = merge(std::move(out), run_sweep(variant, sweep, opts));
    }
    return out;
}

ResultTable preset_fig3c(bool full, const HarnessOptions& opts) {
    // fixed 4 measured channels (cavity + atom 1) while unmeasured atoms join
    ExperimentConfig cfg = single_atom_base();
    cfg.name = "fig3c";
    const int max_extra = full ? 2 : 2;
    ResultTable table;
    for (int extra = 0; extra <= max_extra; ++extra) {
        ExperimentConfig row = cfg;
        const int n = 1 + extra;
        row.name = cfg.name + "/unmeasured=" + std::to_string(extra);
        row.reservoir.n_atom = n;
        row.reservoir.omega = kOmegaLadder[static_cast<std::size_t>(n - 1)];
        row.reservoir.g.assign(static_cast<std::size_t>(n), 30.0);
        row.reservoir.n_fock = n == 1 ? 15 : (n == 2 ? 10 : 9);
        // measured channels: Q, P, atom-1 spin pair
        const TaskDataset task = build_task(row.task);
        const SystemSpec spec = build_reservoir_space(row.reservoir);
        PipelineOptions popts;
        popts.mode = FeatureMode::linear;
        popts.delta = row.delta;
        popts.measured_channels = {1, 2, 3, 4};
        popts.run.workers = opts.effective_workers();
        const auto t0 = std::chrono::steady_clock::now();
        const PipelineResult res =
            run_pipeline(spec, reservoir_params(row.reservoir), task, {}, popts);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        table.rows.push_back({row.name, "train", res.train.nrmse, wall, row.seed,
                              static_cast<double>(extra), ""});
        table.rows.push_back({row.name, "test", res.test->nrmse, wall, row.seed,
                              static_cast<double>(extra), ""});
    }
    if (!opts.out_dir.empty()) {
        std::filesystem::create_directories(opts.out_dir);
        emit_csv(table, opts.out_dir + "/fig3c.csv");
    }
    return table;
}

ResultTable preset_fig3h(bool full, const HarnessOptions& opts) {
    // optimizer comparison at increasing feedback counts
    ResultTable table;
    const int max_nf = full ? 4 : 2;
    for (int nf = 1; nf <= max_nf; ++nf) {
        for (const char* method : {"brute", "brute-nm", "de"}) {
            ExperimentConfig cfg = single_atom_base();
            cfg.name = std::string("fig3h/") + method + "/nf=" + std::to_string(nf);
            cfg.feedback.channels.clear();
            for (int c = 1; c <= nf; ++c) cfg.feedback.channels.push_back(c);
            cfg.feedback.optimizer = method;
            if (!full && nf >= 2) {
                cfg.feedback.scan_n_fock = 8;
                cfg.feedback.rescore_top_k = 8;
                cfg.feedback.refine_n_fock = 10;
                cfg.feedback.grid_step = nf >= 3 ? 1.0 : 0.5;
            }
            if (std::string(method) == "de") {
                cfg.feedback.de_maxiter = full ? 1000 : 12;
                cfg.feedback.scan_n_fock = full ? 0 : 8;
            }
            try {
                ExperimentOutcome outcome = run_experiment(cfg, opts);
                for (auto& row : outcome.table.rows) {
                    row.axis = nf;
                    table.rows.push_back(row);
                }
            } catch (const Error& e) {
                table.rows.push_back({cfg.name, "error", 0.0, 0.0, cfg.seed,
                                      static_cast<double>(nf),
                                      std::string(e.kind()) + ": " + e.what()});
            }
        }
    }
    if (!opts.out_dir.empty()) {
        std::filesystem::create_directories(opts.out_dir);
        emit_csv(table, opts.out_dir + "/fig3h.csv");
    }
    return table;
}

ResultTable preset_fig4a(bool full, const HarnessOptions& opts) {
    ExperimentConfig cfg = single_atom_base();
    cfg.name = "fig4a";
    SweepSpec sweep;
    sweep.axis = "delay";
    sweep.values = full ? std::vector<double>{2, 5, 10, 20, 50, 100, 200}
                        : std::vector<double>{2, 20, 200};
    return run_sweep(cfg, sweep, opts);
}

ResultTable preset_fig4d(bool full, const HarnessOptions& opts) {
    ExperimentConfig cfg = single_atom_base();
    cfg.name = "fig4d";
    SweepSpec sweep;
    sweep.axis = "kappa";
    if (full) {
        sweep.values = {1.0, 10.0, 100.0, 1e3, 1e4, 1e5};
        sweep.n_fock = {15, 15, 10, 6, 4, 4};
    } else {
        sweep.values = {10.0, 1e5};
        sweep.n_fock = {15, 4};
    }
    return run_sweep(cfg, sweep, opts);
}

ResultTable preset_fig6(bool fixed_g, bool full, const HarnessOptions& opts) {
    ExperimentConfig cfg = single_atom_base();
    cfg.name = fixed_g ? "fig6a" : "fig6b";
    cfg.task.type = "sine-square";
    cfg.task.n_ss = 16;
    cfg.task.omega_ss = 10.0;
    cfg.evolution.substeps = 20;

    const int max_atoms = full ? 5 : 3;
    const std::vector<int> n_fock =
        full ? std::vector<int>{15, 12, 10, 8, 7} : std::vector<int>{12, 10, 9};
    const SweepSpec sweep = atoms_sweep(fixed_g, max_atoms, n_fock);

    ResultTable out;
    for (const char* mode : {"linear", "polynomial"}) {
        ExperimentConfig variant = cfg;
        variant.regression = mode;
        variant.name = cfg.name + "-" + mode;
        out = merge(std::move(out), run_sweep(variant, sweep, opts));
    }
    return out;
}

ResultTable preset_fig7a(bool full, const HarnessOptions& opts) {
    ExperimentConfig cfg = single_atom_base();
    cfg.name = "fig7a";
    // desk scale: shortened series, matching the acceptance configuration
    cfg.task.fade = full ? 200 : 50;
    cfg.task.train = full ? 600 : 170;
    cfg.task.test = full ? 300 : 80;
    cfg.reservoir.n_fock = full ? 15 : 8;
    SweepSpec sweep;
    sweep.axis = "trajectories";
    sweep.values = full ? std::vector<double>{10, 100, 1000, 10000}
                        : std::vector<double>{10, 100, 1000};
    ResultTable table = run_sweep(cfg, sweep, opts);

    // deterministic reference line
    ExperimentConfig det = cfg;
    det.name = cfg.name + "/deterministic";
    HarnessOptions no_files = opts;
    no_files.out_dir.clear();
    ExperimentOutcome outcome = run_experiment(det, no_files);
    for (auto& row : outcome.table.rows) table.rows.push_back(row);
    if (!opts.out_dir.empty()) emit_csv(table, opts.out_dir + "/fig7a.csv");
    return table;
}

ResultTable preset_figs1(bool full, const HarnessOptions& opts) {
    // single-feedback cross sections of the trained-NRMSE landscape
    ExperimentConfig base = single_atom_base();
    const TaskDataset task = build_task(base.task);
    const double step = full ? 0.25 : 0.5;

    ResultTable table;
    std::vector<SvgSeries> lines;
    const char* colors[] = {"#1f6fb2", "#d62728", "#2ca02c", "#9467bd"};
    for (int channel = 1; channel <= 4; ++channel) {
        ObjectiveContext ctx;
        ctx.spec = build_reservoir_space(base.reservoir);
        ctx.params = reservoir_params(base.reservoir);
        ctx.task = task;
        ctx.channels = {channel};
        ctx.mode = FeatureMode::linear;
        ctx.run.workers = opts.effective_workers();

        SvgSeries line{"V" + std::to_string(channel), {}, {},
                       colors[(channel - 1) % 4]};
        std::vector<double> vs;
        for (double v = -3.0; v <= 3.0 + 1e-9; v += step) vs.push_back(v);
        std::vector<double> scores(vs.size());
        parallel_for(vs.size(), opts.effective_workers(), [&](std::size_t i) {
            scores[i] = objective(std::vector<double>{vs[i]}, ctx);
        });
        for (std::size_t i = 0; i < vs.size(); ++i) {
            table.rows.push_back({"figS1/V" + std::to_string(channel), "train", scores[i],
                                  0.0, base.seed, vs[i], ""});
            line.x.push_back(vs[i]);
            line.y.push_back(scores[i]);
        }
        lines.push_back(std::move(line));
    }
    if (!opts.out_dir.empty()) {
        std::filesystem::create_directories(opts.out_dir);
        emit_csv(table, opts.out_dir + "/figS1.csv");
        SvgOptions svg;
        svg.title = "training NRMSE vs single feedback weight";
        svg.x_label = "V";
        svg.y_label = "NRMSE";
        emit_svg(lines, svg, opts.out_dir + "/figS1.svg");
    }
    return table;
}

ResultTable preset_figs2(bool full, const HarnessOptions& opts) {
    ExperimentConfig cfg = single_atom_base();
    cfg.esn.n_networks = full ? 1000 : 100;
    const TaskDataset task = build_task(cfg.task);

    ResultTable table;
    auto add = [&](const std::string& id, int neurons, int measured, bool diagonal,
                   double axis) {
        const auto stats =
            esn_ensemble_eval(task, neurons, measured, diagonal, cfg.esn.n_networks,
                              cfg.delta, cfg.seed, opts.effective_workers());
        char note[128];
        std::snprintf(note, sizeof(note), "mean over %d nets; se=%.4g min=%.4g max=%.4g",
                      stats.evaluated, stats.std_error, stats.min, stats.max);
        table.rows.push_back({id, "test", stats.mean, 0.0, cfg.seed, axis, note});
    };

    for (int extra = 0; extra <= 8; extra += 2)
        add("figS2a/unmeasured=" + std::to_string(extra), 4 + extra, 4, false, extra);
    for (int extra = 0; extra <= 8; extra += 2)
        add("figS2b/unmeasured=" + std::to_string(extra), 1 + extra, 1, false, extra);
    for (int n = 4; n <= 12; n += 2) add("figS2c/n=" + std::to_string(n), n, n, false, n);
    for (int n = 4; n <= 12; n += 2) add("figS2d/n=" + std::to_string(n), n, n, true, n);

    if (!opts.out_dir.empty()) {
        std::filesystem::create_directories(opts.out_dir);
        emit_csv(table, opts.out_dir + "/figS2.csv");
    }
    return table;
}

ResultTable preset_figs3(bool full, const HarnessOptions& opts) {
    ExperimentConfig cfg = single_atom_base();
    cfg.name = "figS3";
    cfg.esn.n_networks = full ? 1000 : 100;
    SweepSpec sweep;
    sweep.axis = "esn_size";
    sweep.values = {4, 8, 12, 16, 24, 32};
    return run_sweep(cfg, sweep, opts);
}

ResultTable preset_figs4(bool full, const HarnessOptions& opts) {
    // five-atom polynomial-regression sample-size study
    ExperimentConfig cfg = single_atom_base();
    cfg.name = "figS4";
    cfg.task.type = "sine-square";
    cfg.task.omega_ss = 10.0;
    cfg.evolution.substeps = 20;
    cfg.regression = "polynomial";
    cfg.reservoir.n_atom = 5;
    cfg.reservoir.omega = {0.0, 10.0, 20.0, 30.0, 40.0};
    cfg.reservoir.g.assign(5, 30.0);
    cfg.reservoir.n_fock = full ? 6 : 5;

    SweepSpec sweep;
    sweep.axis = "nss";
    sweep.values = full ? std::vector<double>{8, 16, 32, 64} : std::vector<double>{16, 64};
    return run_sweep(cfg, sweep, opts);
}

ResultTable preset_fig3a_baseline(bool, const HarnessOptions& opts) {
    ExperimentConfig cfg = single_atom_base();
    cfg.name = "fig3a-baseline";
    cfg.traces = true;
    return run_experiment(cfg, opts).table;
}

ResultTable preset_fig3a_feedback1(bool full, const HarnessOptions& opts) {
    ExperimentConfig cfg = single_atom_base();
    cfg.name = "fig3a-feedback1";
    cfg.feedback.channels = {1};
    cfg.feedback.optimizer = "brute";
    (void)full;
    return run_experiment(cfg, opts).table;
}

struct PresetEntry {
    PresetInfo info;
    ResultTable (*run)(bool, const HarnessOptions&);
};

const PresetEntry kPresets[] = {
    {{"fig2-traces", "input/readout traces",
      "single atom, 4 trained feedback channels; staged scan at desk scale"},
     preset_fig2},
    {{"fig3a-baseline", "Mackey-Glass baseline",
      "single atom, no feedback, linear regression, delay 20"},
     preset_fig3a_baseline},
    {{"fig3a-feedback1", "single-channel feedback gain",
      "13-point grid over V1 at production fidelity"},
     preset_fig3a_feedback1},
    {{"fig3a", "NRMSE vs atoms (fixed g)",
      "atoms 1..3 desk / 1..5 full; linear + polynomial"},
     [](bool full, const HarnessOptions& o) { return preset_fig3_sweep(true, full, o); }},
    {{"fig3b", "NRMSE vs atoms (fixed detuning)",
      "atoms 1..3 desk / 1..5 full; linear + polynomial"},
     [](bool full, const HarnessOptions& o) { return preset_fig3_sweep(false, full, o); }},
    {{"fig3c", "unmeasured atoms", "4 measured channels while atoms 1..3 join"},
     preset_fig3c},
    {{"fig3h", "optimizer comparison",
      "brute / brute+NM / DE at 1..2 feedbacks desk, 1..4 full"},
     preset_fig3h},
    {{"fig4a", "NRMSE vs delay", "delays {2,20,200} desk"}, preset_fig4a},
    {{"fig4d", "NRMSE vs kappa", "kappa {10,1e5} desk, {1..1e5} full"}, preset_fig4d},
    {{"fig6a", "sine-square vs atoms (fixed g)", "atoms 1..3 desk"},
     [](bool full, const HarnessOptions& o) { return preset_fig6(true, full, o); }},
    {{"fig6b", "sine-square vs atoms (fixed detuning)", "atoms 1..3 desk"},
     [](bool full, const HarnessOptions& o) { return preset_fig6(false, full, o); }},
    {{"fig7a", "trajectory-count convergence",
      "10/100/1000 trajectories desk (short series), +10000 full"},
     preset_fig7a},
    {{"figS1", "single-feedback landscape", "4 channels x 13-point scans"}, preset_figs1},
    {{"figS2", "ESN ablations", "measured/unmeasured/diagonal studies, 100 nets desk"},
     preset_figs2},
    {{"figS3", "larger ESNs", "sizes 4..32, full measurement"}, preset_figs3},
    {{"figS4", "sine-square sample size", "five atoms, polynomial regression"},
     preset_figs4},
};

} // namespace

std::vector<PresetInfo> list_presets() {
    std::vector<PresetInfo> out;
    for (const auto& p : kPresets) out.push_back(p.info);
    return out;
}

ResultTable run_preset(const std::string& name, bool full, const HarnessOptions& opts) {
    for (const auto& p : kPresets)
        if (p.info.name == name) return p.run(full, opts);
    throw ConfigError("unknown preset '" + name + "' (see `qrc preset --list`)");
}

} // namespace qrc
