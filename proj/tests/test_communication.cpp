#include <cmath>

#include "doctest.h"
#include "mmo/communication.hpp"

using namespace mmo;

namespace {

Objective sum_sq() {
    return Objective("sumsq", Bounds(2, -10.0, 10.0), [](const SolutionVector& x) {
        return x[0] * x[0] + x[1] * x[1];
    });
}

TeamSnapshot three() {
    TeamSnapshot s;
    s.bests.push_back({{0.0, 0.0}, 3.0});
    s.bests.push_back({{2.0, 2.0}, 1.0});
    s.bests.push_back({{4.0, 4.0}, 2.0});
    return s;
}

}  // namespace

TEST_SUITE("communication") {

TEST_CASE("scheme names round-trip") {
    CHECK(scheme_names().size() == 5);
    for (const auto& name : scheme_names())
        CHECK(scheme_name(scheme_from_name(name)) == name);
    CHECK_THROWS_AS(scheme_from_name("median"), std::invalid_argument);
}

TEST_CASE("averaging is the arithmetic mean") {
    auto out = averaging(three());
    CHECK(out[0] == doctest::Approx(2.0));
    CHECK(out[1] == doctest::Approx(2.0));
}

TEST_CASE("rank weights are K..1 over the fitness ordering") {
    // sorted by fitness: (2,2) w=3/6, (4,4) w=2/6, (0,0) w=1/6
    auto out = rank_weighted(three());
    CHECK(out[0] == doctest::Approx(7.0 / 3.0));
    CHECK(out[1] == doctest::Approx(7.0 / 3.0));
}

TEST_CASE("exponential raw weights match the hand-computed K=7 sequence") {
    auto w = exponential_raw_weights(7);
    REQUIRE(w.size() == 7);
    CHECK(w[0] == doctest::Approx(7.0));
    CHECK(w[1] == doctest::Approx(1.2));
    CHECK(w[2] == doctest::Approx(0.2));
    CHECK(w[3] == doctest::Approx(0.032));
    CHECK(w[4] == doctest::Approx(0.0048));
    CHECK(w[5] == doctest::Approx(0.00064));
    CHECK(w[6] == doctest::Approx(0.000064));
}

TEST_CASE("exponential combination on the K=3 example") {
    // raw weights [3, 0.4, 0.04] over fitness order -> (3*2 + 0.4*4)/3.44
    auto out = exponential_weighted(three());
    CHECK(out[0] == doctest::Approx(7.6 / 3.44));
    CHECK(out[1] == doctest::Approx(7.6 / 3.44));
}

TEST_CASE("best returns the argmin entry and meta averages the other four") {
    CHECK(best_rank(three()) == SolutionVector{2.0, 2.0});

    auto meta = meta_weighted(three());
    double expect = (2.0 + 7.0 / 3.0 + 7.6 / 3.44 + 2.0) / 4.0;
    CHECK(meta[0] == doctest::Approx(expect));
    CHECK(meta[1] == doctest::Approx(expect));
}

TEST_CASE("ties pick the lowest roster index") {
    TeamSnapshot s;
    s.bests.push_back({{1.0, 1.0}, 5.0});
    s.bests.push_back({{2.0, 2.0}, 5.0});
    CHECK(best_rank(s) == SolutionVector{1.0, 1.0});
}

TEST_CASE("apply_scheme counts one evaluation except for best") {
    Objective obj = sum_sq();
    for (const auto& name : scheme_names()) {
        long long evals = 0;
        auto out = apply_scheme(scheme_from_name(name), three(), obj, evals);
        if (name == "best") {
            CHECK(evals == 0);
            CHECK(out.fitness == 1.0);  // stored fitness reused, not re-evaluated
        } else {
            CHECK(evals == 1);
            CHECK(out.fitness ==
                  doctest::Approx(out.position[0] * out.position[0] +
                                  out.position[1] * out.position[1]));
        }
    }
}

TEST_CASE("combined points are clamped into the objective bounds") {
    Objective tight("tight", Bounds(2, 0.0, 1.0),
                    [](const SolutionVector& x) { return x[0] + x[1]; });
    TeamSnapshot s;
    s.bests.push_back({{5.0, -3.0}, 1.0});
    long long evals = 0;
    auto out = apply_scheme(SchemeId::averaging, s, tight, evals);
    CHECK(out.position == SolutionVector{1.0, 0.0});
    CHECK(out.fitness == doctest::Approx(1.0));
}

TEST_CASE("weights form a convex combination: output stays in the bests' box") {
    TeamSnapshot s;
    s.bests.push_back({{-3.0, 7.0}, 9.0});
    s.bests.push_back({{1.0, -2.0}, 4.0});
    s.bests.push_back({{5.0, 0.0}, 6.0});
    s.bests.push_back({{2.0, 2.0}, 1.0});
    for (auto id : {SchemeId::averaging, SchemeId::rank_weighted, SchemeId::exponential_weighted,
                    SchemeId::meta_weighted}) {
        long long evals = 0;
        auto out = apply_scheme(id, s, sum_sq(), evals);
        for (int j = 0; j < 2; ++j) {
            double lo = 1e9, hi = -1e9;
            for (const auto& b : s.bests) {
                lo = std::min(lo, b.position[j]);
                hi = std::max(hi, b.position[j]);
            }
            CHECK(out.position[j] >= lo - 1e-12);
            CHECK(out.position[j] <= hi + 1e-12);
        }
    }
}

TEST_CASE("permutation invariance with distinct fitnesses") {
    TeamSnapshot s = three();
    TeamSnapshot p;
    p.bests = {s.bests[2], s.bests[0], s.bests[1]};
    for (const auto& name : scheme_names()) {
        long long e1 = 0, e2 = 0;
        auto a = apply_scheme(scheme_from_name(name), s, sum_sq(), e1);
        auto b = apply_scheme(scheme_from_name(name), p, sum_sq(), e2);
        REQUIRE(a.position.size() == b.position.size());
        for (std::size_t j = 0; j < a.position.size(); ++j)
            CHECK(a.position[j] == doctest::Approx(b.position[j]).epsilon(1e-13));
    }
}

TEST_CASE("K=1 collapses every scheme to the single best") {
    TeamSnapshot s;
    s.bests.push_back({{0.5, -0.5}, 0.5});
    for (const auto& name : scheme_names()) {
        long long evals = 0;
        auto out = apply_scheme(scheme_from_name(name), s, sum_sq(), evals);
        CHECK(out.position[0] == doctest::Approx(0.5));
        CHECK(out.position[1] == doctest::Approx(-0.5));
    }
}

TEST_CASE("empty snapshot is rejected") {
    TeamSnapshot s;
    long long evals = 0;
    CHECK_THROWS_AS(apply_scheme(SchemeId::averaging, s, sum_sq(), evals), std::invalid_argument);
}

}  // TEST_SUITE
