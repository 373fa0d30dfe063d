#pragma once

#include <string>
#include <vector>

#include "mmo/benchmarks.hpp"
#include "mmo/core.hpp"

namespace mmo {

enum class SchemeId { averaging, rank_weighted, exponential_weighted, best_rank, meta_weighted };

// Stable CLI names: averaging, rank, exponential, best, meta.
SchemeId scheme_from_name(const std::string& name);
std::string scheme_name(SchemeId id);
std::vector<std::string> scheme_names();

// One entry per roster optimizer, aligned by roster index.
struct TeamSnapshot {
    std::vector<EvaluatedSolution> bests;
};

SolutionVector averaging(const TeamSnapshot& snap);
SolutionVector rank_weighted(const TeamSnapshot& snap);
SolutionVector exponential_weighted(const TeamSnapshot& snap);
SolutionVector best_rank(const TeamSnapshot& snap);
SolutionVector meta_weighted(const TeamSnapshot& snap);

// Dispatches to the scheme, clamps the aggregate into bounds, and evaluates it
// once; best_rank reuses the stored fitness (no evaluation). `evals` is
// incremented by the number of objective calls made (0 or 1).
EvaluatedSolution apply_scheme(SchemeId id, const TeamSnapshot& snap, const Objective& obj,
                               long long& evals);

// Exponential raw weight vector for K members (alpha = 0.2), exposed for
// tests.
std::vector<double> exponential_raw_weights(int k);

}  // namespace mmo
