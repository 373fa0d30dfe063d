#include "mmo/core.hpp"

#include <algorithm>
#include <cmath>

namespace mmo {

Bounds::Bounds(std::vector<double> lo_, std::vector<double> hi_)
    : lo(std::move(lo_)), hi(std::move(hi_)) {
    if (lo.size() != hi.size() || lo.empty())
        throw std::invalid_argument("Bounds: lo/hi size mismatch or empty");
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (lo[i] > hi[i])
            throw std::invalid_argument("Bounds: lo must be <= hi in every dimension");
}

Bounds::Bounds(std::size_t dim, double l, double h)
    : Bounds(std::vector<double>(dim, l), std::vector<double>(dim, h)) {}

bool Bounds::contains(const SolutionVector& x) const {
    if (x.size() != lo.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
}

void Bounds::clamp(SolutionVector& x) const {
    if (x.size() != lo.size())
        throw std::invalid_argument("Bounds::clamp: dimension mismatch");
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = std::clamp(x[i], lo[i], hi[i]);
}

double RngStream::uniform() {
    // 53 random mantissa bits -> [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

std::size_t RngStream::uniform_index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
    // Modulo bias is < 2^-60 for any population size we use.
    return static_cast<std::size_t>(engine_() % n);
}

double RngStream::gaussian() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    // Basic Box-Muller; u1 shifted into (0, 1] so log() is finite.
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * M_PI * u2;
    cached_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
}

static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(0x9E3779B97F4A7C15ULL * (index + 1)));
}

double mantegna_sigma(double lambda) {
    // below 1 the distribution has no mean and the step scale loses meaning
    if (lambda <= 1.0 || lambda > 2.0)
        throw std::invalid_argument("mantegna_sigma: lambda must be in (1, 2]");
    double num = std::tgamma(1.0 + lambda) * std::sin(M_PI * lambda / 2.0);
    double den = std::tgamma((1.0 + lambda) / 2.0) * lambda * std::pow(2.0, (lambda - 1.0) / 2.0);
    return std::pow(num / den, 1.0 / lambda);
}

LevySampler::LevySampler(double lambda)
    : lambda_(lambda), sigma_u_(mantegna_sigma(lambda)) {}

double LevySampler::draw(RngStream& rng) const {
    double u = sigma_u_ * rng.gaussian();
    double v = rng.gaussian();
    return u / std::pow(std::fabs(v), 1.0 / lambda_);
}

SolutionVector clamp_to_bounds(SolutionVector x, const Bounds& b) {
    b.clamp(x);
    return x;
}

SolutionVector uniform_random_solution(const Bounds& b, RngStream& rng) {
    SolutionVector x(static_cast<std::size_t>(b.dim()));
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = rng.uniform(b.lo[i], b.hi[i]);
    return x;
}

double truncate_step(double step, double width) {
    double cap = 10.0 * width;
    return std::clamp(step, -cap, cap);
}

}  // namespace mmo
