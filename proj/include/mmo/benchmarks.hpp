#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mmo/core.hpp"

namespace mmo {

// A black-box objective over a bounded box. `f` must be pure and thread-safe:
// the orchestrator evaluates it concurrently from several optimizers.
struct Objective {
    std::string name;
    Bounds bounds;
    std::function<double(const SolutionVector&)> f;

    double operator()(const SolutionVector& x) const { return f(x); }
    int dim() const { return bounds.dim(); }
};

namespace benchmarks {

double rosenbrock(const SolutionVector& x);
double griewank(const SolutionVector& x);
double zakharov(const SolutionVector& x);

// Canonical domains: rosenbrock/zakharov [-5,10]^D, griewank [-600,600]^D.
Objective make(const std::string& name, int dim);
std::vector<std::string> names();
// Global minimizer (all-ones for rosenbrock, origin otherwise).
SolutionVector minimizer(const std::string& name, int dim);

}  // namespace benchmarks
}  // namespace mmo
