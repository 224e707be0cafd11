#include "qrc/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qrc/parallel.hpp"
#include "qrc/rng.hpp"

namespace qrc {

double objective(std::span<const double> v, const ObjectiveContext& ctx, std::string* note) {
    if (v.size() != ctx.channels.size())
        throw ContractError("weight count does not match feedback channels");
    FeedbackConfig fb;
    fb.channels = ctx.channels;
    fb.weights.assign(v.begin(), v.end());

    PipelineOptions opts;
    opts.mode = ctx.mode;
    opts.delta = ctx.delta;
    opts.run = ctx.run;
    opts.run.diag = nullptr;
    opts.score_test = false;

    try {
        const PipelineResult res = run_pipeline(ctx.spec, ctx.params, ctx.task, fb, opts);
        if (!std::isfinite(res.train.nrmse)) {
            if (note != nullptr) *note = "non-finite NRMSE";
            return kObjectiveSentinel;
        }
        return res.train.nrmse;
    } catch (const Error& e) {
        if (note != nullptr) *note = e.what();
        return kObjectiveSentinel;
    }
}

void OptimizerReport::verify() const {
    double lo = kObjectiveSentinel;
    for (const auto& rec : log) lo = std::min(lo, rec.nrmse);
    if (!log.empty() && best_nrmse != lo)
        throw Error("optimize", "report best does not match the evaluation log");
}

namespace {

std::vector<double> grid_axis(Bounds bounds, double step) {
    if (!(step > 0.0) || !(bounds.second > bounds.first))
        throw ContractError("bad bounds/step");
    std::vector<double> axis;
    for (double v = bounds.first; v <= bounds.second + 1e-12; v += step)
        axis.push_back(std::min(v, bounds.second));
    return axis;
}

void evaluate_batch(const ObjectiveContext& ctx, const std::vector<std::vector<double>>& vs,
                    std::vector<EvaluationRecord>& out) {
    const std::size_t base = out.size();
    out.resize(base + vs.size());
    parallel_for(vs.size(), std::max<std::size_t>(ctx.run.workers, 1), [&](std::size_t i) {
        EvaluationRecord rec;
        rec.v = vs[i];
        rec.nrmse = objective(rec.v, ctx, &rec.note);
        out[base + i] = std::move(rec);
    });
}

void pick_best(OptimizerReport& report) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < report.log.size(); ++i)
        if (report.log[i].nrmse < report.log[best].nrmse) best = i;
    report.best_v = report.log[best].v;
    report.best_nrmse = report.log[best].nrmse;
    report.eval_count = report.log.size();
}

} // namespace

OptimizerReport brute_force(const ObjectiveContext& ctx, Bounds bounds, double step) {
    const std::size_t dims = ctx.channels.size();
    if (dims < 1) throw ContractError("at least one feedback dimension required");
    if (dims > 4)
        throw ContractError("brute force refuses more than 4 dimensions; "
                            "use differential evolution");

    const std::vector<double> axis = grid_axis(bounds, step);
    std::size_t total = 1;
    for (std::size_t d = 0; d < dims; ++d) total *= axis.size();

    // lexicographic enumeration, first axis slowest
    std::vector<std::vector<double>> points(total, std::vector<double>(dims, 0.0));
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        for (std::size_t d = dims; d-- > 0;) {
            points[idx][d] = axis[rem % axis.size()];
            rem /= axis.size();
        }
    }

    OptimizerReport report;
    report.method = "brute";
    evaluate_batch(ctx, points, report.log);
    pick_best(report);
    return report;
}

OptimizerReport nelder_mead(const ObjectiveContext& ctx, std::span<const double> start,
                            Bounds bounds, double initial_step, int max_evals) {
    const std::size_t dims = start.size();
    if (dims != ctx.channels.size()) throw ContractError("start dimension mismatch");

    auto clamp = [&](std::vector<double>& v) {
        for (auto& x : v) x = std::min(std::max(x, bounds.first), bounds.second);
    };

    OptimizerReport report;
    report.method = "nelder-mead";
    auto eval = [&](const std::vector<double>& v) {
        EvaluationRecord rec;
        rec.v = v;
        rec.nrmse = objective(v, ctx, &rec.note);
        report.log.push_back(rec);
        return rec.nrmse;
    };

    // initial simplex: start plus one displaced vertex per dimension
    std::vector<std::vector<double>> xs;
    std::vector<double> fs;
    xs.emplace_back(start.begin(), start.end());
    clamp(xs[0]);
    fs.push_back(eval(xs[0]));
    for (std::size_t d = 0; d < dims; ++d) {
        auto v = xs[0];
        v[d] += (v[d] + initial_step <= bounds.second) ? initial_step : -initial_step;
        clamp(v);
        xs.push_back(v);
        fs.push_back(eval(v));
    }

    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
    while (static_cast<int>(report.log.size()) < max_evals) {
        // order vertices
        std::vector<std::size_t> order(xs.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
        std::vector<std::vector<double>> xs2;
        std::vector<double> fs2;
        for (std::size_t i : order) {
            xs2.push_back(xs[i]);
            fs2.push_back(fs[i]);
        }
        xs.swap(xs2);
        fs.swap(fs2);

        if (fs.back() - fs.front() < 1e-10) break;

        std::vector<double> centroid(dims, 0.0);
        for (std::size_t i = 0; i + 1 < xs.size(); ++i)
            for (std::size_t d = 0; d < dims; ++d) centroid[d] += xs[i][d];
        for (auto& c : centroid) c /= static_cast<double>(dims);

        auto blend = [&](double t) {
            std::vector<double> v(dims);
            for (std::size_t d = 0; d < dims; ++d)
                v[d] = centroid[d] + t * (centroid[d] - xs.back()[d]);
            clamp(v);
            return v;
        };

        const auto reflected = blend(alpha);
        const double fr = eval(reflected);
        if (fr < fs.front()) {
            const auto expanded = blend(gamma);
            const double fe = eval(expanded);
            if (fe < fr) {
                xs.back() = expanded;
                fs.back() = fe;
            } else {
                xs.back() = reflected;
                fs.back() = fr;
            }
        } else if (fr < fs[fs.size() - 2]) {
            xs.back() = reflected;
            fs.back() = fr;
        } else {
            const auto contracted = blend(-rho);
            const double fc = eval(contracted);
            if (fc < fs.back()) {
                xs.back() = contracted;
                fs.back() = fc;
            } else {
                for (std::size_t i = 1; i < xs.size(); ++i) {
                    for (std::size_t d = 0; d < dims; ++d)
                        xs[i][d] = xs[0][d] + sigma * (xs[i][d] - xs[0][d]);
                    fs[i] = eval(xs[i]);
                }
            }
        }
    }
    pick_best(report);
    return report;
}

OptimizerReport brute_force_nelder_mead(const ObjectiveContext& ctx, Bounds bounds,
                                        double step) {
    OptimizerReport grid = brute_force(ctx, bounds, step);
    OptimizerReport refined =
        nelder_mead(ctx, grid.best_v, bounds, 0.5 * step,
                    200 * static_cast<int>(ctx.channels.size()));

    OptimizerReport report;
    report.method = "brute+nelder-mead";
    report.log = std::move(grid.log);
    report.log.insert(report.log.end(), refined.log.begin(), refined.log.end());
    pick_best(report);
    return report;
}

OptimizerReport differential_evolution(const ObjectiveContext& ctx, Bounds bounds,
                                       const DifferentialEvolutionSettings& settings) {
    const std::size_t dims = ctx.channels.size();
    if (dims < 1) throw ContractError("at least one feedback dimension required");
    const std::size_t pop_n = static_cast<std::size_t>(settings.population_per_dim) * dims;

    OptimizerReport report;
    report.method = "differential-evolution";

    for (int batch = 0; batch < settings.batches; ++batch) {
        const std::uint64_t batch_seed = settings.seed + static_cast<std::uint64_t>(batch);
        RngStream rng(batch_seed, 0xDE);

        std::vector<std::vector<double>> pop(pop_n, std::vector<double>(dims));
        for (auto& v : pop)
            for (auto& x : v) x = rng.uniform(bounds.first, bounds.second);

        std::vector<EvaluationRecord> evals;
        evaluate_batch(ctx, pop, evals);
        std::vector<double> energy(pop_n);
        for (std::size_t i = 0; i < pop_n; ++i) energy[i] = evals[i].nrmse;
        report.log.insert(report.log.end(), evals.begin(), evals.end());

        for (int iter = 0; iter < settings.maxiter; ++iter) {
            std::vector<std::vector<double>> trials(pop_n, std::vector<double>(dims));
            for (std::size_t i = 0; i < pop_n; ++i) {
                std::size_t a, b, c;
                do { a = rng.below(pop_n); } while (a == i);
                do { b = rng.below(pop_n); } while (b == i || b == a);
                do { c = rng.below(pop_n); } while (c == i || c == a || c == b);
                const std::size_t forced = rng.below(dims);
                for (std::size_t d = 0; d < dims; ++d) {
                    const bool cross = (rng.uniform01() <= settings.crossover) || d == forced;
                    double x = cross ? pop[a][d] + settings.weight * (pop[b][d] - pop[c][d])
                                     : pop[i][d];
                    trials[i][d] = std::min(std::max(x, bounds.first), bounds.second);
                }
            }
            std::vector<EvaluationRecord> trial_evals;
            evaluate_batch(ctx, trials, trial_evals);
            report.log.insert(report.log.end(), trial_evals.begin(), trial_evals.end());
            for (std::size_t i = 0; i < pop_n; ++i) {
                if (trial_evals[i].nrmse <= energy[i]) {
                    pop[i] = trials[i];
                    energy[i] = trial_evals[i].nrmse;
                }
            }
            // scipy-style convergence: population spread small vs mean energy
            const double mean =
                std::accumulate(energy.begin(), energy.end(), 0.0) /
                static_cast<double>(pop_n);
            double var = 0.0;
            for (double e : energy) var += (e - mean) * (e - mean);
            const double sd = std::sqrt(var / static_cast<double>(pop_n));
            if (sd <= settings.tol * std::abs(mean)) break;
        }

        std::size_t best = 0;
        for (std::size_t i = 1; i < pop_n; ++i)
            if (energy[i] < energy[best]) best = i;
        report.batches.push_back({batch_seed, pop[best], energy[best]});
    }

    pick_best(report);
    return report;
}

} // namespace qrc
