#include "mmo/mmo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <set>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mmo {

void validate(const MmoConfig& config) {
    if (config.roster.empty())
        throw std::invalid_argument("mmo: roster must not be empty");
    std::set<std::string> seen;
    for (const auto& id : config.roster) {
        if (!is_optimizer_name(id))
            throw std::invalid_argument("mmo: unknown optimizer '" + id + "'");
        if (!seen.insert(id).second)
            throw std::invalid_argument("mmo: duplicate optimizer '" + id + "' in roster");
    }
    if (config.agents < 1)
        throw std::invalid_argument("mmo: agents must be >= 1");
    if (config.frequency < 1)
        throw std::invalid_argument("mmo: frequency must be >= 1");
    if (config.generations < 1)
        throw std::invalid_argument("mmo: generations must be >= 1");
}

namespace {

int resolve_threads(const MmoConfig& config) {
#ifndef _OPENMP
    (void)config;
    return 1;
#else
    if (config.threads > 0) return config.threads;
    if (const char* env = std::getenv("MMO_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<int>(v);
    }
    return static_cast<int>(config.roster.size());
#endif
}

}  // namespace

MmoResult run_mmo(const MmoConfig& config, const Objective& obj) {
    validate(config);
    const int k = static_cast<int>(config.roster.size());
    const int threads = resolve_threads(config);

    std::vector<std::unique_ptr<Optimizer>> team;
    team.reserve(k);
    for (int i = 0; i < k; ++i) {
        const std::string& id = config.roster[i];
        OptimizerParams params;
        if (auto it = config.overrides.find(id); it != config.overrides.end()) params = it->second;
        team.push_back(make_optimizer(id, obj, config.agents,
                                      derive_seed(config.master_seed, static_cast<std::uint64_t>(i)),
                                      params));
    }

    EvaluatedSolution archive = team[0]->global_best();
    for (int i = 1; i < k; ++i)
        if (team[i]->global_best().fitness < archive.fitness) archive = team[i]->global_best();

    MmoResult result;
    result.trajectory.reserve(config.generations + 1);
    result.trajectory.emplace_back(0, archive.fitness);

    long long comm_evaluations = 0;
    for (int gen = 1; gen <= config.generations; ++gen) {
        if (threads > 1) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads)
            for (int i = 0; i < k; ++i) team[i]->step();
#else
            for (int i = 0; i < k; ++i) team[i]->step();
#endif
        } else {
            for (int i = 0; i < k; ++i) team[i]->step();
        }

        // Archive update precedes any broadcast so a destructive injection
        // can never erase the best solution seen so far.
        for (int i = 0; i < k; ++i)
            if (team[i]->global_best().fitness < archive.fitness) archive = team[i]->global_best();

        if (gen % config.frequency == 0) {
            TeamSnapshot snapshot;
            snapshot.bests.reserve(k);
            for (int i = 0; i < k; ++i) snapshot.bests.push_back(team[i]->global_best());
            EvaluatedSolution team_best = apply_scheme(config.scheme, snapshot, obj, comm_evaluations);
            if (team_best.fitness < archive.fitness) archive = team_best;
            for (int i = 0; i < k; ++i) team[i]->inject(team_best);
        }
        result.trajectory.emplace_back(gen, archive.fitness);
    }

    result.best = archive;
    result.evaluation_count = comm_evaluations;
    for (int i = 0; i < k; ++i) {
        result.evaluation_count += team[i]->evaluation_count();
        result.per_optimizer_final[config.roster[i]] = team[i]->global_best().fitness;
    }
    return result;
}

MmoResult run_ablation(const MmoConfig& config, const Objective& obj, const std::string& excluded) {
    if (!is_optimizer_name(excluded))
        throw std::invalid_argument("mmo: unknown optimizer '" + excluded + "'");
    MmoConfig reduced = config;
    reduced.roster.clear();
    for (const auto& id : config.roster)
        if (id != excluded) reduced.roster.push_back(id);
    if (reduced.roster.size() == config.roster.size())
        throw std::invalid_argument("mmo: excluded optimizer '" + excluded + "' is not in the roster");
    return run_mmo(reduced, obj);
}

std::pair<double, double> mean_se(const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("mmo: mean_se of empty sample");
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    if (xs.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    double sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    return {mean, sd / std::sqrt(static_cast<double>(xs.size()))};
}

std::vector<CrossDimRow> run_cross_dimension(const MmoConfig& base, const std::string& benchmark,
                                             const std::vector<int>& dims,
                                             const std::vector<int>& generations_per_dim,
                                             int trials) {
    if (dims.empty() || dims.size() != generations_per_dim.size())
        throw std::invalid_argument("mmo: dims and generations lists must match and be non-empty");
    if (trials < 1) throw std::invalid_argument("mmo: trials must be >= 1");

    std::vector<CrossDimRow> table;
    for (std::size_t row = 0; row < dims.size(); ++row) {
        Objective obj = benchmarks::make(benchmark, dims[row]);
        MmoConfig full = base;
        full.generations = generations_per_dim[row];

        MmoConfig solo = full;
        solo.roster = {"batlevy"};
        // Keep the broadcast machinery inert for the standalone arm.
        solo.frequency = full.generations + 1;

        std::vector<double> solo_err, mmo_err;
        solo_err.reserve(trials);
        mmo_err.reserve(trials);
        for (int t = 0; t < trials; ++t) {
            MmoConfig a = solo, b = full;
            a.master_seed = base.master_seed + static_cast<std::uint64_t>(t);
            b.master_seed = base.master_seed + static_cast<std::uint64_t>(t);
            solo_err.push_back(run_mmo(a, obj).best.fitness);
            mmo_err.push_back(run_mmo(b, obj).best.fitness);
        }

        CrossDimRow r;
        r.dim = dims[row];
        r.generations = generations_per_dim[row];
        std::tie(r.batlevy_mean, r.batlevy_se) = mean_se(solo_err);
        std::tie(r.mmo_mean, r.mmo_se) = mean_se(mmo_err);
        table.push_back(r);
    }
    return table;
}

}  // namespace mmo
