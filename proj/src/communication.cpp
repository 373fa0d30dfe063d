#include "mmo/communication.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mmo {

SchemeId scheme_from_name(const std::string& name) {
    if (name == "averaging") return SchemeId::averaging;
    if (name == "rank") return SchemeId::rank_weighted;
    if (name == "exponential") return SchemeId::exponential_weighted;
    if (name == "best") return SchemeId::best_rank;
    if (name == "meta") return SchemeId::meta_weighted;
    throw std::invalid_argument("unknown communication scheme: " + name);
}

std::string scheme_name(SchemeId id) {
    switch (id) {
        case SchemeId::averaging: return "averaging";
        case SchemeId::rank_weighted: return "rank";
        case SchemeId::exponential_weighted: return "exponential";
        case SchemeId::best_rank: return "best";
        case SchemeId::meta_weighted: return "meta";
    }
    throw std::invalid_argument("bad SchemeId");
}

std::vector<std::string> scheme_names() {
    return {"averaging", "rank", "exponential", "best", "meta"};
}

static void require_nonempty(const TeamSnapshot& snap) {
    if (snap.bests.empty())
        throw std::invalid_argument("communication scheme applied to empty snapshot");
}

// Indices of snapshot entries sorted ascending by fitness; ties keep the
// lower index first (stable).
static std::vector<std::size_t> fitness_order(const TeamSnapshot& snap) {
    std::vector<std::size_t> idx(snap.bests.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return snap.bests[a].fitness < snap.bests[b].fitness;
    });
    return idx;
}

// Weighted sum over the sorted snapshot; weights are normalized to sum 1 so
// the aggregate is a convex combination and stays inside the search box.
static SolutionVector weighted_by_rank(const TeamSnapshot& snap, const std::vector<double>& raw) {
    auto order = fitness_order(snap);
    double total = std::accumulate(raw.begin(), raw.end(), 0.0);
    std::size_t d = snap.bests[0].position.size();
    SolutionVector out(d, 0.0);
    for (std::size_t r = 0; r < order.size(); ++r) {
        double w = raw[r] / total;
        const auto& pos = snap.bests[order[r]].position;
        for (std::size_t i = 0; i < d; ++i) out[i] += w * pos[i];
    }
    return out;
}

SolutionVector averaging(const TeamSnapshot& snap) {
    require_nonempty(snap);
    std::size_t d = snap.bests[0].position.size();
    SolutionVector out(d, 0.0);
    for (const auto& e : snap.bests)
        for (std::size_t i = 0; i < d; ++i) out[i] += e.position[i];
    for (double& v : out) v /= static_cast<double>(snap.bests.size());
    return out;
}

SolutionVector rank_weighted(const TeamSnapshot& snap) {
    require_nonempty(snap);
    int k = static_cast<int>(snap.bests.size());
    std::vector<double> raw(static_cast<std::size_t>(k));
    for (int r = 0; r < k; ++r) raw[static_cast<std::size_t>(r)] = static_cast<double>(k - r);
    return weighted_by_rank(snap, raw);
}

std::vector<double> exponential_raw_weights(int k) {
    // W*_i = k - i for sorted position i (best first); raw = W* . alpha^(W*[0]-W*).
    const double alpha = 0.2;
    std::vector<double> raw(static_cast<std::size_t>(k));
    for (int r = 0; r < k; ++r) {
        double wstar = static_cast<double>(k - r);
        raw[static_cast<std::size_t>(r)] = wstar * std::pow(alpha, static_cast<double>(k) - wstar);
    }
    return raw;
}

SolutionVector exponential_weighted(const TeamSnapshot& snap) {
    require_nonempty(snap);
    return weighted_by_rank(snap, exponential_raw_weights(static_cast<int>(snap.bests.size())));
}

SolutionVector best_rank(const TeamSnapshot& snap) {
    require_nonempty(snap);
    std::size_t best = 0;
    for (std::size_t i = 1; i < snap.bests.size(); ++i)
        if (snap.bests[i].fitness < snap.bests[best].fitness) best = i;
    return snap.bests[best].position;
}

SolutionVector meta_weighted(const TeamSnapshot& snap) {
    require_nonempty(snap);
    SolutionVector acc = averaging(snap);
    SolutionVector parts[3] = {rank_weighted(snap), exponential_weighted(snap), best_rank(snap)};
    for (const auto& p : parts)
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += p[i];
    for (double& v : acc) v /= 4.0;
    return acc;
}

EvaluatedSolution apply_scheme(SchemeId id, const TeamSnapshot& snap, const Objective& obj,
                               long long& evals) {
    require_nonempty(snap);
    if (id == SchemeId::best_rank) {
        // Reuse the stored fitness: the aggregate IS one of the snapshot entries.
        std::size_t best = 0;
        for (std::size_t i = 1; i < snap.bests.size(); ++i)
            if (snap.bests[i].fitness < snap.bests[best].fitness) best = i;
        return snap.bests[best];
    }
    SolutionVector pos;
    switch (id) {
        case SchemeId::averaging: pos = averaging(snap); break;
        case SchemeId::rank_weighted: pos = rank_weighted(snap); break;
        case SchemeId::exponential_weighted: pos = exponential_weighted(snap); break;
        case SchemeId::meta_weighted: pos = meta_weighted(snap); break;
        default: throw std::invalid_argument("bad SchemeId");
    }
    obj.bounds.clamp(pos);
    double fit = obj(pos);
    ++evals;
    return {std::move(pos), fit};
}

}  // namespace mmo
