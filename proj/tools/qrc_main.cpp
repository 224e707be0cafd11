// qrc — CLI for the cavity reservoir-computing engine.
//
// Subcommands: run, sweep, train-feedback, esn, preset.  Errors leave as
// machine-readable JSON on stderr with a nonzero exit code.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qrc/experiment.hpp"
#include "qrc/kernels.hpp"

using namespace qrc;
using nlohmann::json;

namespace {

struct GlobalArgs {
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    int substeps = 0;
    int trajectories = 0;
    std::size_t workers = 0;
    std::string kernel_set = "auto";

    HarnessOptions harness() const {
        HarnessOptions h;
        h.out_dir = out_dir;
        h.seed = seed;
        h.substeps = substeps;
        h.trajectories = trajectories;
        h.workers = workers;
        return h;
    }
};

void add_global_flags(CLI::App* cmd, GlobalArgs& g) {
    cmd->add_option("--out-dir", g.out_dir, "output directory");
    cmd->add_option("--seed", g.seed, "seed override (0 keeps the config seed)");
    cmd->add_option("--substeps", g.substeps, "deterministic substep minimum override");
    cmd->add_option("--trajectories", g.trajectories, "trajectory-count override");
    cmd->add_option("--workers", g.workers, "worker thread count (0 = hardware)");
    cmd->add_option("--kernels", g.kernel_set, "kernel set: auto|scalar|avx2");
}

void print_rows(const ResultTable& table) {
    for (const auto& row : table.rows) {
        if (row.segment == "error") {
            std::printf("%-44s %-6s %s\n", row.config_id.c_str(), "ERROR",
                        row.note.c_str());
        } else {
            std::printf("%-44s %-6s NRMSE %.6f  (%.1fs)%s%s\n", row.config_id.c_str(),
                        row.segment.c_str(), row.nrmse, row.wall_seconds,
                        row.note.empty() ? "" : "  ", row.note.c_str());
        }
    }
}

int fail_json(const std::string& kind, const std::string& message) {
    json err;
    err["error"] = {{"kind", kind}, {"message", message}};
    std::cerr << err.dump() << "\n";
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"feedback-enhanced cavity quantum reservoir computing"};
    app.require_subcommand(1);

    GlobalArgs g;

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "run one experiment from a config file");
    run_cmd->add_option("config", config_path, "config JSON path")->required();
    add_global_flags(run_cmd, g);

    std::string sweep_axis;
    std::vector<double> sweep_values;
    auto* sweep_cmd = app.add_subcommand("sweep", "sweep one axis of a config");
    sweep_cmd->add_option("config", config_path, "config JSON path")->required();
    sweep_cmd
        ->add_option("--axis", sweep_axis,
                     "atoms|delay|kappa|nss|trajectories|esn_size")
        ->required();
    sweep_cmd->add_option("--values", sweep_values,
                          "axis values (defaults per axis when omitted)");
    add_global_flags(sweep_cmd, g);

    std::string method = "brute";
    auto* train_cmd =
        app.add_subcommand("train-feedback", "optimize feedback weights for a config");
    train_cmd->add_option("config", config_path, "config JSON path")->required();
    train_cmd->add_option("--method", method, "brute|brute-nm|de");
    add_global_flags(train_cmd, g);

    auto* esn_cmd = app.add_subcommand("esn", "evaluate the classical ESN ensemble");
    esn_cmd->add_option("config", config_path, "config JSON path")->required();
    add_global_flags(esn_cmd, g);

    std::string preset_name;
    bool preset_full = false;
    bool preset_list = false;
    auto* preset_cmd = app.add_subcommand("preset", "run a named study preset");
    preset_cmd->add_option("name", preset_name, "preset name");
    preset_cmd->add_flag("--full", preset_full, "full scale instead of desk scale");
    preset_cmd->add_flag("--list", preset_list, "list available presets");
    add_global_flags(preset_cmd, g);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::stringstream silent;
        app.exit(e, silent, silent);
        return fail_json("usage", e.what());
    }

    try {
        kernels::select(g.kernel_set);
        const HarnessOptions opts = g.harness();

        if (run_cmd->parsed()) {
            const ExperimentConfig cfg = ExperimentConfig::load(config_path);
            const ExperimentOutcome outcome = run_experiment(cfg, opts);
            print_rows(outcome.table);
            if (outcome.trained.trained) {
                std::printf("trained V:");
                for (double v : outcome.trained.feedback.weights) std::printf(" %.6f", v);
                std::printf("  (%zu objective evaluations)\n",
                            outcome.trained.report.eval_count);
            }
            return 0;
        }

        if (sweep_cmd->parsed()) {
            const ExperimentConfig cfg = ExperimentConfig::load(config_path);
            SweepSpec sweep;
            sweep.axis = sweep_axis;
            sweep.values =
                sweep_values.empty() ? SweepSpec::default_values(sweep_axis) : sweep_values;
            print_rows(run_sweep(cfg, sweep, opts));
            return 0;
        }

        if (train_cmd->parsed()) {
            ExperimentConfig cfg = ExperimentConfig::load(config_path);
            if (cfg.feedback.channels.empty())
                throw ConfigError("config has no feedback channels to train");
            cfg.feedback.optimizer = method;
            const TaskDataset task = build_task(cfg.task);
            const TrainedFeedback trained = train_feedback(cfg, task, opts);

            json out;
            out["method"] = trained.report.method;
            out["best_v"] = trained.feedback.weights;
            out["best_train_nrmse"] = trained.report.best_nrmse;
            out["evaluations"] = trained.report.eval_count;
            for (const auto& batch : trained.report.batches)
                out["batches"].push_back({{"seed", batch.seed},
                                          {"best_v", batch.best_v},
                                          {"best_nrmse", batch.best_nrmse}});
            std::cout << out.dump(2) << "\n";

            if (!opts.out_dir.empty()) {
                std::filesystem::create_directories(opts.out_dir);
                ResultTable log;
                for (const auto& rec : trained.report.log) {
                    std::string vtxt;
                    for (double v : rec.v) vtxt += (vtxt.empty() ? "" : " ") + std::to_string(v);
                    log.rows.push_back({cfg.name + "/eval", "train", rec.nrmse, 0.0,
                                        cfg.seed, 0.0, vtxt});
                }
                emit_csv(log, opts.out_dir + "/" + cfg.name + "_feedback_log.csv");
            }
            return 0;
        }

        if (esn_cmd->parsed()) {
            const ExperimentConfig cfg = ExperimentConfig::load(config_path);
            const TaskDataset task = build_task(cfg.task);
            const int measured =
                cfg.esn.n_measured > 0 ? cfg.esn.n_measured : cfg.esn.n_neuron;
            const auto stats = esn_ensemble_eval(task, cfg.esn.n_neuron, measured,
                                                 cfg.esn.diagonal_only, cfg.esn.n_networks,
                                                 cfg.delta, opts.seed ? opts.seed : cfg.seed,
                                                 opts.effective_workers());
            std::printf("ESN n=%d measured=%d nets=%d: mean %.5f  se %.5f  min %.5f  "
                        "max %.5f  (degenerate %d)\n",
                        cfg.esn.n_neuron, measured, stats.evaluated, stats.mean,
                        stats.std_error, stats.min, stats.max, stats.degenerate);
            return 0;
        }

        if (preset_cmd->parsed()) {
            if (preset_list || preset_name.empty()) {
                for (const auto& info : list_presets())
                    std::printf("%-16s %-36s %s\n", info.name.c_str(), info.study.c_str(),
                                info.details.c_str());
                return 0;
            }
            print_rows(run_preset(preset_name, preset_full, opts));
            return 0;
        }
        return fail_json("usage", "no subcommand");
    } catch (const Error& e) {
        return fail_json(e.kind(), e.what());
    } catch (const std::exception& e) {
        return fail_json("internal", e.what());
    }
}
