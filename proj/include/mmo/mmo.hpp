#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mmo/benchmarks.hpp"
#include "mmo/communication.hpp"
#include "mmo/core.hpp"
#include "mmo/optimizers.hpp"

namespace mmo {

struct MmoConfig {
    std::vector<std::string> roster = optimizer_names();   // K optimizers
    int agents = 100;                                      // n per optimizer
    SchemeId scheme = SchemeId::best_rank;
    int frequency = 10;                                    // gamma, generations per broadcast
    int generations = 2000;                                // G
    std::uint64_t master_seed = 0;
    std::map<std::string, OptimizerParams> overrides;      // optimizer id -> params
    // 0 = take MMO_THREADS from the environment (default: roster size);
    // <= 1 runs the serial reference path.
    int threads = 0;
};

struct MmoResult {
    EvaluatedSolution best;                                // all-time archive best
    std::vector<std::pair<int, double>> trajectory;        // (generation, archive fitness), G+1 rows
    std::map<std::string, double> per_optimizer_final;     // id -> final g* fitness
    long long evaluation_count = 0;
};

void validate(const MmoConfig& config);

// Algorithm 1: step the K optimizers each generation (in parallel when
// threads > 1); every `frequency` generations aggregate the team snapshot
// through the scheme and broadcast the team best.  The archive best is
// updated before injection and never overwritten upward.
MmoResult run_mmo(const MmoConfig& config, const Objective& obj);

// run_mmo with `excluded` removed from the roster.
MmoResult run_ablation(const MmoConfig& config, const Objective& obj, const std::string& excluded);

struct CrossDimRow {
    int dim = 0;
    int generations = 0;
    double batlevy_mean = 0.0, batlevy_se = 0.0;
    double mmo_mean = 0.0, mmo_se = 0.0;
};

// For each dimension, runs standalone BATLevy and the full-roster MMO at a
// matched generation budget over `trials` seeds (master_seed + t).
std::vector<CrossDimRow> run_cross_dimension(const MmoConfig& base, const std::string& benchmark,
                                             const std::vector<int>& dims,
                                             const std::vector<int>& generations_per_dim,
                                             int trials);

// Mean and standard error (ddof = 1; se = 0 for a single sample).
std::pair<double, double> mean_se(const std::vector<double>& xs);

}  // namespace mmo
