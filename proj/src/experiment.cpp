#include "qrc/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <set>

namespace qrc {

TaskDataset build_task(const TaskConfig& cfg) {
    if (cfg.type == "mackey-glass") {
        MackeyGlassParams p;
        p.delay = cfg.delay;
        const TaskDataset ds = mackey_glass_dataset(p, cfg.fade, cfg.train, cfg.test,
                                                    cfg.dt_internal);
        return ds;
    }
    if (cfg.type == "sine-square") {
        return sine_square_dataset(cfg.n_fade, cfg.n_train, cfg.n_test, cfg.n_ss,
                                   cfg.omega_ss, cfg.seed);
    }
    throw ConfigError("unknown task type '" + cfg.type + "'");
}

ReservoirParams reservoir_params(const ReservoirConfig& cfg) {
    ReservoirParams p;
    p.omega_c = cfg.omega_c;
    p.omega = cfg.omega;
    p.g = cfg.g;
    p.epsilon = cfg.epsilon;
    p.kappa = cfg.kappa;
    return p;
}

SystemSpec build_reservoir_space(const ReservoirConfig& cfg, int n_fock_override) {
    return build_space(cfg.n_atom, n_fock_override > 0 ? n_fock_override : cfg.n_fock);
}

namespace {

FeatureMode parse_mode(const std::string& s) {
    if (s == "linear") return FeatureMode::linear;
    if (s == "polynomial") return FeatureMode::polynomial;
    throw ConfigError("unknown regression mode '" + s + "'");
}

RunOptions run_options(const ExperimentConfig& cfg, const HarnessOptions& opts) {
    RunOptions run;
    run.substeps = opts.substeps > 0 ? opts.substeps : cfg.evolution.substeps;
    run.stochastic_substeps = cfg.evolution.stochastic_substeps;
    run.auto_substeps = cfg.evolution.auto_substeps;
    run.workers = opts.effective_workers();
    return run;
}

ObjectiveContext make_context(const ExperimentConfig& cfg, const TaskDataset& task,
                              const HarnessOptions& opts, int n_fock) {
    ObjectiveContext ctx;
    ctx.spec = build_reservoir_space(cfg.reservoir, n_fock);
    ctx.params = reservoir_params(cfg.reservoir);
    ctx.task = task;
    ctx.channels = cfg.feedback.channels;
    ctx.mode = parse_mode(cfg.regression);
    ctx.delta = cfg.delta;
    ctx.run = run_options(cfg, opts);
    // Runaway feedback saturates at the truncation scale and would otherwise
    // burn enormous substep counts on physically meaningless grid points; a
    // diverging modified input maps to the objective sentinel instead.  The
    // trained optima sit at |f~| <= ~5.
    ctx.run.input_cap = 12.0;
    return ctx;
}

} // namespace

TrainedFeedback train_feedback(const ExperimentConfig& cfg, const TaskDataset& task,
                               const HarnessOptions& opts) {
    TrainedFeedback out;
    out.feedback.channels = cfg.feedback.channels;

    if (cfg.feedback.optimizer == "none" || cfg.feedback.channels.empty()) {
        out.feedback.weights = cfg.feedback.weights;
        if (out.feedback.weights.empty())
            out.feedback.weights.assign(cfg.feedback.channels.size(), 0.0);
        return out;
    }

    const Bounds bounds{cfg.feedback.bound_lo, cfg.feedback.bound_hi};
    const ObjectiveContext scan_ctx =
        make_context(cfg, task, opts, cfg.feedback.scan_n_fock);
    const bool staged =
        cfg.feedback.scan_n_fock > 0 && cfg.feedback.scan_n_fock != cfg.reservoir.n_fock;

    OptimizerReport report;
    if (cfg.feedback.optimizer == "brute") {
        report = brute_force(scan_ctx, bounds, cfg.feedback.grid_step);
    } else if (cfg.feedback.optimizer == "de") {
        DifferentialEvolutionSettings settings;
        settings.maxiter = cfg.feedback.de_maxiter;
        settings.batches = cfg.feedback.de_batches;
        settings.seed = cfg.seed;
        report = differential_evolution(scan_ctx, bounds, settings);
    } else if (cfg.feedback.optimizer == "brute-nm") {
        if (!staged) {
            report = brute_force_nelder_mead(scan_ctx, bounds, cfg.feedback.grid_step);
        } else {
            // Scan at reduced truncation, re-score leading candidates at the
            // production truncation, then refine locally.
            report = brute_force(scan_ctx, bounds, cfg.feedback.grid_step);

            const ObjectiveContext prod_ctx = make_context(cfg, task, opts, 0);
            std::vector<std::size_t> order(report.log.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return report.log[a].nrmse < report.log[b].nrmse;
            });
            const std::size_t top_k = std::min<std::size_t>(
                cfg.feedback.rescore_top_k > 0 ? cfg.feedback.rescore_top_k : 10,
                order.size());

            std::vector<EvaluationRecord> rescored(top_k);
            parallel_for(top_k, opts.effective_workers(), [&](std::size_t i) {
                EvaluationRecord rec;
                rec.v = report.log[order[i]].v;
                rec.nrmse = objective(rec.v, prod_ctx, &rec.note);
                rec.note = "rescore " + rec.note;
                rescored[i] = std::move(rec);
            });
            std::size_t best = 0;
            for (std::size_t i = 1; i < top_k; ++i)
                if (rescored[i].nrmse < rescored[best].nrmse) best = i;

            const ObjectiveContext refine_ctx =
                make_context(cfg, task, opts, cfg.feedback.refine_n_fock);
            OptimizerReport refined = nelder_mead(refine_ctx, rescored[best].v, bounds,
                                                  0.5 * cfg.feedback.grid_step, 140);

            // final choice on the production objective
            std::vector<EvaluationRecord> finalists = rescored;
            {
                EvaluationRecord rec;
                rec.v = refined.best_v;
                rec.nrmse = objective(rec.v, prod_ctx, &rec.note);
                rec.note = "refined " + rec.note;
                finalists.push_back(std::move(rec));
            }
            std::size_t win = 0;
            for (std::size_t i = 1; i < finalists.size(); ++i)
                if (finalists[i].nrmse < finalists[win].nrmse) win = i;

            OptimizerReport combined;
            combined.method = "brute+nelder-mead (staged fock scan)";
            combined.log = std::move(report.log);
            combined.log.insert(combined.log.end(), refined.log.begin(), refined.log.end());
            combined.log.insert(combined.log.end(), finalists.begin(), finalists.end());
            combined.best_v = finalists[win].v;
            combined.best_nrmse = finalists[win].nrmse;
            combined.eval_count = combined.log.size();
            report = std::move(combined);
        }
    } else {
        throw ConfigError("unknown optimizer '" + cfg.feedback.optimizer + "'");
    }

    out.feedback.weights = report.best_v;
    out.report = std::move(report);
    out.trained = true;
    return out;
}

namespace {

void write_experiment_outputs(const ExperimentOutcome& outcome, const TaskDataset& task,
                              const ExperimentConfig& cfg, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const std::string base = out_dir + "/" + cfg.name;
    emit_csv(outcome.table, base + ".csv");

    if (!outcome.table.traces.empty()) {
        const TraceSeries& trace = outcome.table.traces.front();
        emit_trace_csv(trace, base + "_trace.csv");
        emit_task_csv(task, base + "_task.csv");

        // target-vs-actual overlay on the scored segments
        SvgSeries target{"target", {}, {}, "#1f6fb2"};
        SvgSeries actual{"actual", {}, {}, "#d62728"};
        for (std::size_t k = task.fade_end; k < task.test_end; ++k) {
            const double t = trace.t[k];
            target.x.push_back(t);
            target.y.push_back(trace.target[k]);
            if (!std::isnan(trace.actual[k])) {
                actual.x.push_back(t);
                actual.y.push_back(trace.actual[k]);
            }
        }
        SvgOptions svg;
        svg.title = cfg.name + ": actual vs target";
        svg.x_label = "t";
        svg.y_label = "output";
        emit_svg({target, actual}, svg, base + "_output.svg");
    }
}

} // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& input_cfg,
                                 const HarnessOptions& opts) {
    ExperimentConfig cfg = input_cfg;
    if (opts.seed != 0) cfg.seed = opts.seed;
    if (opts.trajectories != 0) cfg.evolution.trajectories = opts.trajectories;
    if (opts.substeps != 0) cfg.evolution.substeps = opts.substeps;

    const auto t0 = std::chrono::steady_clock::now();
    const TaskDataset task = build_task(cfg.task);

    ExperimentOutcome outcome;
    outcome.trained = train_feedback(cfg, task, opts);
    outcome.resolved = cfg;
    outcome.resolved.feedback.weights = outcome.trained.feedback.weights;
    outcome.resolved.feedback.optimizer = "none";

    const SystemSpec spec = build_reservoir_space(cfg.reservoir);
    const ReservoirParams params = reservoir_params(cfg.reservoir);

    PipelineOptions popts;
    popts.mode = parse_mode(cfg.regression);
    popts.delta = cfg.delta;
    popts.run = run_options(cfg, opts);
    popts.keep_series = cfg.traces;
    popts.seed = cfg.seed;
    if (cfg.evolution.scheme == "trajectories") {
        popts.trajectories = cfg.evolution.trajectories;
    } else if (cfg.evolution.scheme != "deterministic") {
        throw ConfigError("unknown evolution scheme '" + cfg.evolution.scheme + "'");
    }

    outcome.pipeline = run_pipeline(spec, params, task, outcome.trained.feedback, popts);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    outcome.table.rows.push_back(
        {cfg.name, "train", outcome.pipeline.train.nrmse, wall, cfg.seed, 0.0, ""});
    if (outcome.pipeline.test.has_value())
        outcome.table.rows.push_back(
            {cfg.name, "test", outcome.pipeline.test->nrmse, wall, cfg.seed, 0.0, ""});

    if (cfg.traces) {
        TraceSeries trace;
        trace.name = cfg.name;
        const std::size_t total = task.size();
        trace.t.resize(total);
        trace.input = task.inputs;
        trace.target = task.targets;
        trace.modified = outcome.pipeline.modified_inputs;
        trace.actual.assign(total, std::nan(""));
        trace.split.resize(total);
        for (std::size_t k = 0; k < total; ++k) {
            trace.t[k] = static_cast<double>(k) * task.dt;
            trace.split[k] = k < task.fade_end ? 0 : (k < task.train_end ? 1 : 2);
        }
        for (std::size_t k = task.fade_end; k < task.train_end; ++k)
            trace.actual[k] = outcome.pipeline.train.y[k - task.fade_end];
        if (outcome.pipeline.test.has_value())
            for (std::size_t k = task.train_end; k < task.test_end; ++k)
                trace.actual[k] = outcome.pipeline.test->y[k - task.train_end];
        outcome.table.traces.push_back(std::move(trace));
    }

    if (!opts.out_dir.empty()) write_experiment_outputs(outcome, task, cfg, opts.out_dir);
    return outcome;
}

std::vector<double> SweepSpec::default_values(const std::string& axis) {
    if (axis == "atoms") return {1, 2, 3};
    if (axis == "delay") return {2, 20, 200};
    if (axis == "kappa") return {10.0, 1e5};
    if (axis == "nss") return {16, 64};
    if (axis == "trajectories") return {10, 100, 1000};
    if (axis == "esn_size") return {4, 6, 8, 10, 12};
    throw ConfigError("unknown sweep axis '" + axis + "'");
}

ResultTable run_sweep(const ExperimentConfig& cfg, const SweepSpec& sweep,
                      const HarnessOptions& opts) {
    if (sweep.values.empty()) throw ContractError("sweep values must be nonempty");
    ResultTable table;

    for (std::size_t i = 0; i < sweep.values.size(); ++i) {
        const double value = sweep.values[i];
        ExperimentConfig row_cfg = cfg;
        row_cfg.name = cfg.name + "/" + sweep.axis + "=" + std::to_string(value);

        try {
            if (!sweep.n_fock.empty() && sweep.n_fock[i] > 0)
                row_cfg.reservoir.n_fock = sweep.n_fock[i];

            if (sweep.axis == "atoms") {
                const int n = static_cast<int>(value);
                row_cfg.reservoir.n_atom = n;
                if (!sweep.omega_ladder.empty())
                    row_cfg.reservoir.omega = sweep.omega_ladder[i];
                else
                    row_cfg.reservoir.omega.assign(static_cast<std::size_t>(n),
                                                   cfg.reservoir.omega.front());
                if (!sweep.g_ladder.empty()) row_cfg.reservoir.g = sweep.g_ladder[i];
                else
                    row_cfg.reservoir.g.assign(static_cast<std::size_t>(n),
                                               cfg.reservoir.g.front());
            } else if (sweep.axis == "delay") {
                row_cfg.task.delay = static_cast<int>(value);
            } else if (sweep.axis == "kappa") {
                row_cfg.reservoir.kappa = value;
            } else if (sweep.axis == "nss") {
                row_cfg.task.n_ss = static_cast<int>(value);
            } else if (sweep.axis == "trajectories") {
                row_cfg.evolution.scheme = "trajectories";
                row_cfg.evolution.trajectories = static_cast<int>(value);
            } else if (sweep.axis == "esn_size") {
                const int n = static_cast<int>(value);
                const TaskDataset task = build_task(row_cfg.task);
                const int measured = row_cfg.esn.n_measured > 0 ? row_cfg.esn.n_measured : n;
                const auto stats = esn_ensemble_eval(task, n, measured,
                                                     row_cfg.esn.diagonal_only,
                                                     row_cfg.esn.n_networks, row_cfg.delta,
                                                     row_cfg.seed, opts.effective_workers());
                char note[128];
                std::snprintf(note, sizeof(note),
                              "mean over %d nets; se=%.4g min=%.4g max=%.4g",
                              stats.evaluated, stats.std_error, stats.min, stats.max);
                table.rows.push_back({row_cfg.name, "test", stats.mean, 0.0, row_cfg.seed,
                                      value, note});
                continue;
            } else {
                throw ConfigError("unknown sweep axis '" + sweep.axis + "'");
            }

            HarnessOptions row_opts = opts;
            row_opts.out_dir.clear();
            ExperimentOutcome outcome = run_experiment(row_cfg, row_opts);
            for (auto& row : outcome.table.rows) {
                row.axis = value;
                table.rows.push_back(row);
            }
        } catch (const Error& e) {
            // record and continue with the remaining rows
            table.rows.push_back({row_cfg.name, "error", 0.0, 0.0, row_cfg.seed, value,
                                  std::string(e.kind()) + ": " + e.what()});
        }
    }

    if (!opts.out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(opts.out_dir);
        const std::string base = opts.out_dir + "/" + cfg.name + "_" + sweep.axis;
        emit_csv(table, base + ".csv");

        SvgSeries test_line{"test NRMSE", {}, {}, "#d62728"};
        SvgSeries train_line{"train NRMSE", {}, {}, "#1f6fb2"};
        for (const auto& row : table.rows) {
            if (row.segment == "test") {
                test_line.x.push_back(row.axis);
                test_line.y.push_back(row.nrmse);
            } else if (row.segment == "train") {
                train_line.x.push_back(row.axis);
                train_line.y.push_back(row.nrmse);
            }
        }
        SvgOptions svg;
        svg.title = cfg.name + ": NRMSE vs " + sweep.axis;
        svg.x_label = sweep.axis;
        svg.y_label = "NRMSE";
        svg.log_x = (sweep.axis == "kappa" || sweep.axis == "trajectories");
        std::vector<SvgSeries> lines;
        if (!test_line.x.empty()) lines.push_back(test_line);
        if (!train_line.x.empty()) lines.push_back(train_line);
        emit_svg(lines, svg, base + ".svg");
    }
    return table;
}

} // namespace qrc
