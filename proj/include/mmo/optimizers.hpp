#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mmo/benchmarks.hpp"
#include "mmo/core.hpp"

namespace mmo {

// Per-optimizer hyperparameter overrides (missing keys fall back to the
// canonical defaults documented in each optimizer's implementation).
struct OptimizerParams {
    std::map<std::string, double> values;

    double get(const std::string& key, double fallback) const {
        auto it = values.find(key);
        return it == values.end() ? fallback : it->second;
    }
};

// Behavioral contract shared by the seven metaheuristics.  An instance owns
// its population and RNG stream; the objective is borrowed and must outlive
// the optimizer.  step() advances exactly one generation.
class Optimizer {
public:
    virtual ~Optimizer() = default;

    virtual void step() = 0;
    virtual const EvaluatedSolution& global_best() const = 0;
    // Broadcast of the team best.  PSO/PSOLevy/BAT/BATLevy overwrite their g*
    // unconditionally; CS and FP replace a uniformly random population member;
    // DE replaces its current-worst member.
    virtual void inject(const EvaluatedSolution& team_best) = 0;
    virtual long long evaluation_count() const = 0;
    virtual const std::string& id() const = 0;
    virtual int population_size() const = 0;
    // Current agents with their fitness values (diagnostics and tests).
    virtual std::vector<EvaluatedSolution> population() const = 0;
};

// Stable CLI identifiers: pso, psolevy, de, bat, batlevy, cs, fp.
std::vector<std::string> optimizer_names();
bool is_optimizer_name(const std::string& id);

std::unique_ptr<Optimizer> make_optimizer(const std::string& id, const Objective& obj, int n,
                                          std::uint64_t seed, const OptimizerParams& params = {});

}  // namespace mmo
