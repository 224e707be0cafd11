// optimize.hpp — global optimization of the feedback weights V, with the
// trained-readout NRMSE as objective: grid search, grid + Nelder-Mead
// refinement, and differential evolution.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qrc/pipeline.hpp"

namespace qrc {

// Everything one objective evaluation needs; owns its system so scans can run
// at a different Fock truncation than the final scoring pass.
struct ObjectiveContext {
    SystemSpec spec;
    ReservoirParams params;
    TaskDataset task;
    std::vector<int> channels; // feedback channels, 1-based
    FeatureMode mode = FeatureMode::linear;
    double delta = 1e-10;
    RunOptions run;
};

inline constexpr double kObjectiveSentinel = 1e6;

// Training-segment NRMSE after fitting W for feedback weights v; failures
// (diverging feedback, degenerate regression, non-finite score) map to the
// sentinel with an explanatory note.
double objective(std::span<const double> v, const ObjectiveContext& ctx,
                 std::string* note = nullptr);

struct EvaluationRecord {
    std::vector<double> v;
    double nrmse = 0.0;
    std::string note;
};

struct OptimizerReport {
    std::string method;
    std::vector<double> best_v;
    double best_nrmse = 0.0;
    std::size_t eval_count = 0;
    std::vector<EvaluationRecord> log;

    struct Batch {
        std::uint64_t seed = 0;
        std::vector<double> best_v;
        double best_nrmse = 0.0;
    };
    std::vector<Batch> batches; // differential evolution only

    void verify() const; // best equals the minimum over the log
};

using Bounds = std::pair<double, double>;

// Full grid with 1 + (hi-lo)/step points per dimension (13 for the default
// [-3,3] x 0.5); ties break toward the lexicographically smallest V.
// Refuses more than four dimensions.
OptimizerReport brute_force(const ObjectiveContext& ctx, Bounds bounds = {-3.0, 3.0},
                            double step = 0.5);

// brute_force, then a bounded Nelder-Mead refinement seeded at the grid
// argmin; returns whichever is better.
OptimizerReport brute_force_nelder_mead(const ObjectiveContext& ctx,
                                        Bounds bounds = {-3.0, 3.0}, double step = 0.5);

struct DifferentialEvolutionSettings {
    int maxiter = 1000;
    int batches = 3;
    std::uint64_t seed = 1;
    int population_per_dim = 15;
    double weight = 0.5;       // mutation factor F
    double crossover = 0.7;    // CR
    double tol = 0.01;         // population-spread convergence threshold
};

// DE/rand/1/bin over `batches` independently seeded runs; the best batch wins.
OptimizerReport differential_evolution(const ObjectiveContext& ctx,
                                       Bounds bounds = {-3.0, 3.0},
                                       const DifferentialEvolutionSettings& settings = {});

// Bounded Nelder-Mead from an explicit start (used by the staged preset path).
OptimizerReport nelder_mead(const ObjectiveContext& ctx, std::span<const double> start,
                            Bounds bounds, double initial_step, int max_evals = 400);

} // namespace qrc
