#include "mmo/benchmarks.hpp"

#include <cmath>

namespace mmo {
namespace benchmarks {

double rosenbrock(const SolutionVector& x) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        double a = x[i + 1] - x[i] * x[i];
        double b = x[i] - 1.0;
        s += 100.0 * a * a + b * b;
    }
    return s;
}

double griewank(const SolutionVector& x) {
    double sum = 0.0, prod = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += x[i] * x[i];
        prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return sum / 4000.0 - prod + 1.0;
}

double zakharov(const SolutionVector& x) {
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s1 += x[i] * x[i];
        s2 += 0.5 * static_cast<double>(i + 1) * x[i];
    }
    return s1 + s2 * s2 + s2 * s2 * s2 * s2;
}

Objective make(const std::string& name, int dim) {
    if (dim < 1) throw std::invalid_argument("benchmark dim must be positive");
    if (name == "rosenbrock") {
        // the rosenbrock sum runs over consecutive pairs, so one dimension is degenerate
        if (dim < 2) throw std::invalid_argument("rosenbrock needs dim >= 2");
        return {name, Bounds(dim, -5.0, 10.0), rosenbrock};
    }
    if (name == "griewank")
        return {name, Bounds(dim, -600.0, 600.0), griewank};
    if (name == "zakharov")
        return {name, Bounds(dim, -5.0, 10.0), zakharov};
    throw std::invalid_argument("unknown benchmark: " + name);
}

std::vector<std::string> names() {
    return {"rosenbrock", "griewank", "zakharov"};
}

SolutionVector minimizer(const std::string& name, int dim) {
    if (name != "rosenbrock" && name != "griewank" && name != "zakharov")
        throw std::invalid_argument("unknown benchmark: " + name);
    if (dim < 1 || (name == "rosenbrock" && dim < 2))
        throw std::invalid_argument("bad benchmark dim " + std::to_string(dim));
    double v = (name == "rosenbrock") ? 1.0 : 0.0;
    return SolutionVector(static_cast<std::size_t>(dim), v);
}

}  // namespace benchmarks
}  // namespace mmo
