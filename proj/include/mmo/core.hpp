#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace mmo {

using SolutionVector = std::vector<double>;

struct EvaluatedSolution {
    SolutionVector position;
    double fitness = 0.0;
};

// Axis-aligned box bounds. Widths are cached because every optimizer scales
// steps by them.
struct Bounds {
    std::vector<double> lo;
    std::vector<double> hi;

    Bounds() = default;
    Bounds(std::vector<double> lo_, std::vector<double> hi_);
    // Uniform box [l, h]^dim.
    Bounds(std::size_t dim, double l, double h);

    int dim() const { return static_cast<int>(lo.size()); }
    double width(int i) const { return hi[i] - lo[i]; }
    bool contains(const SolutionVector& x) const;
    void clamp(SolutionVector& x) const;
};

// Deterministic random stream: mt19937_64 with hand-specified distributions
// (std::uniform_real_distribution etc. are not bit-portable across standard
// libraries, so we roll our own on top of the bit-exact engine).
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    // [0, 1)
    double uniform();
    // [lo, hi)
    double uniform(double lo, double hi);
    // {0, 1, ..., n-1}
    std::size_t uniform_index(std::size_t n);
    // standard normal via Box-Muller (second draw cached)
    double gaussian();

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
    bool has_cached_ = false;
    double cached_ = 0.0;
};

// Derives the seed of sub-stream `index` from a master seed (splitmix64-based,
// so adjacent indices give uncorrelated streams).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Mantegna's algorithm for Levy-stable step lengths with tail exponent
// lambda in (1, 2]. sigma_u is precomputed at construction.
class LevySampler {
public:
    explicit LevySampler(double lambda);
    double lambda() const { return lambda_; }
    double sigma_u() const { return sigma_u_; }
    // One raw draw (untruncated; heavy-tailed).
    double draw(RngStream& rng) const;

private:
    double lambda_;
    double sigma_u_;
};

double mantegna_sigma(double lambda);

// Uniform random point inside the bounds.
SolutionVector uniform_random_solution(const Bounds& b, RngStream& rng);

// Value-returning projection onto the bounds.
SolutionVector clamp_to_bounds(SolutionVector x, const Bounds& b);

// Clips a raw step to +-10 * width per dimension: Levy tails occasionally
// produce astronomically long jumps that would otherwise just slam into the
// box corner and waste the move.
double truncate_step(double step, double width);

}  // namespace mmo
