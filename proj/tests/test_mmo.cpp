#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "mmo/mmo.hpp"

using namespace mmo;

namespace {

MmoConfig tiny(std::uint64_t seed) {
    MmoConfig c;
    c.agents = 10;
    c.generations = 40;
    c.frequency = 5;
    c.scheme = SchemeId::rank_weighted;
    c.master_seed = seed;
    c.threads = 1;
    return c;
}

}  // namespace

TEST_SUITE("mmo") {

TEST_CASE("config validation") {
    Objective obj = benchmarks::make("zakharov", 2);
    MmoConfig c = tiny(0);
    c.roster = {};
    CHECK_THROWS_AS(run_mmo(c, obj), std::invalid_argument);
    c.roster = {"pso", "pso"};
    CHECK_THROWS_AS(run_mmo(c, obj), std::invalid_argument);
    c.roster = {"pso", "nope"};
    CHECK_THROWS_AS(run_mmo(c, obj), std::invalid_argument);
    c = tiny(0);
    c.agents = 0;
    CHECK_THROWS_AS(run_mmo(c, obj), std::invalid_argument);
    c = tiny(0);
    c.frequency = 0;
    CHECK_THROWS_AS(run_mmo(c, obj), std::invalid_argument);
    c = tiny(0);
    c.generations = 0;
    CHECK_THROWS_AS(run_mmo(c, obj), std::invalid_argument);
}

TEST_CASE("single-roster run_mmo equals the standalone optimizer, bitwise") {
    Objective obj = benchmarks::make("zakharov", 2);
    for (const auto& id : optimizer_names()) {
        MmoConfig c = tiny(31);
        c.roster = {id};
        c.frequency = c.generations + 1;  // no broadcasts
        MmoResult res = run_mmo(c, obj);

        auto solo = make_optimizer(id, obj, c.agents, derive_seed(c.master_seed, 0));
        REQUIRE(res.trajectory.size() == static_cast<std::size_t>(c.generations) + 1);
        CHECK(res.trajectory[0].second == solo->global_best().fitness);
        for (int g = 1; g <= c.generations; ++g) {
            solo->step();
            CHECK(res.trajectory[g].second == solo->global_best().fitness);
        }
        CHECK(res.best.position == solo->global_best().position);
        CHECK(res.evaluation_count == solo->evaluation_count());
    }
}

TEST_CASE("trajectory is non-increasing across 100 random configurations") {
    RngStream rng(2718);
    auto names = optimizer_names();
    auto benches = benchmarks::names();
    for (int trial = 0; trial < 100; ++trial) {
        MmoConfig c;
        c.roster.clear();  // default is the full team; sample our own subset
        int k = 1 + static_cast<int>(rng.uniform_index(names.size()));
        std::vector<std::string> pool = names;
        for (int i = 0; i < k; ++i) {
            std::size_t j = rng.uniform_index(pool.size());
            c.roster.push_back(pool[j]);
            pool.erase(pool.begin() + j);
        }
        c.agents = 4 + static_cast<int>(rng.uniform_index(9));  // de needs >= 4
        c.generations = 10 + static_cast<int>(rng.uniform_index(21));
        c.frequency = 1 + static_cast<int>(rng.uniform_index(5));
        c.scheme = static_cast<SchemeId>(rng.uniform_index(5));
        c.master_seed = rng.next_u64();
        c.threads = 1;
        Objective obj = benchmarks::make(benches[rng.uniform_index(benches.size())], 2);

        MmoResult res = run_mmo(c, obj);
        REQUIRE(res.trajectory.size() == static_cast<std::size_t>(c.generations) + 1);
        for (std::size_t i = 1; i < res.trajectory.size(); ++i) {
            CHECK(res.trajectory[i].second <= res.trajectory[i - 1].second);
            CHECK(res.trajectory[i].first == static_cast<int>(i));
        }
        CHECK(res.best.fitness == res.trajectory.back().second);
        CHECK(obj(res.best.position) == res.best.fitness);
        REQUIRE(res.per_optimizer_final.size() == c.roster.size());
        // the archive is at least as good as every optimizer's final g*
        for (const auto& [id, fit] : res.per_optimizer_final)
            CHECK(res.best.fitness <= fit);
    }
}

TEST_CASE("serial and parallel execution agree bitwise") {
    Objective obj = benchmarks::make("griewank", 5);
    MmoConfig serial = tiny(7);
    serial.agents = 20;
    serial.generations = 100;
    serial.scheme = SchemeId::exponential_weighted;
    MmoConfig parallel = serial;
    parallel.threads = 7;

    MmoResult a = run_mmo(serial, obj);
    MmoResult b = run_mmo(parallel, obj);
    CHECK(a.best.position == b.best.position);
    CHECK(a.best.fitness == b.best.fitness);
    CHECK(a.evaluation_count == b.evaluation_count);
    REQUIRE(a.trajectory.size() == b.trajectory.size());
    for (std::size_t i = 0; i < a.trajectory.size(); ++i)
        CHECK(a.trajectory[i].second == b.trajectory[i].second);
}

TEST_CASE("deterministic given the master seed") {
    Objective obj = benchmarks::make("rosenbrock", 3);
    MmoConfig c = tiny(99);
    MmoResult a = run_mmo(c, obj);
    MmoResult b = run_mmo(c, obj);
    CHECK(a.best.position == b.best.position);
    CHECK(a.trajectory == b.trajectory);
    c.master_seed = 100;
    CHECK(run_mmo(c, obj).best.fitness != a.best.fitness);
}

TEST_CASE("evaluation accounting is exact") {
    Objective obj = benchmarks::make("zakharov", 3);
    MmoConfig c;
    c.agents = 10;
    c.generations = 20;
    c.frequency = 4;
    c.scheme = SchemeId::averaging;
    c.master_seed = 1;
    c.threads = 1;
    // init 7*10; steps 20*(6*10 + (10+2)); comm events at 4,8,12,16,20 -> +5
    MmoResult res = run_mmo(c, obj);
    CHECK(res.evaluation_count == 70 + 20 * 72 + 5);

    c.scheme = SchemeId::best_rank;  // reuses stored fitness: no comm evaluations
    CHECK(run_mmo(c, obj).evaluation_count == 70 + 20 * 72);

    c.frequency = 7;  // events at 7 and 14 only
    c.scheme = SchemeId::averaging;
    CHECK(run_mmo(c, obj).evaluation_count == 70 + 20 * 72 + 2);
}

TEST_CASE("frequency beyond the horizon disables communication") {
    Objective obj = benchmarks::make("griewank", 3);
    MmoConfig a = tiny(5);
    a.frequency = a.generations + 1;
    MmoConfig b = a;
    b.frequency = a.generations + 17;
    MmoResult ra = run_mmo(a, obj);
    MmoResult rb = run_mmo(b, obj);
    CHECK(ra.best.position == rb.best.position);
    CHECK(ra.trajectory == rb.trajectory);
    CHECK(ra.evaluation_count == rb.evaluation_count);
}

TEST_CASE("injected team bests never corrupt the archive") {
    // destructive broadcast stress: scheme averaging on rosenbrock blends
    // bests from different valley segments into worse midpoints
    Objective obj = benchmarks::make("rosenbrock", 2);
    MmoConfig c = tiny(13);
    c.frequency = 1;
    c.scheme = SchemeId::averaging;
    MmoResult res = run_mmo(c, obj);
    for (std::size_t i = 1; i < res.trajectory.size(); ++i)
        CHECK(res.trajectory[i].second <= res.trajectory[i - 1].second);
}

TEST_CASE("ablation removes exactly the excluded optimizer") {
    Objective obj = benchmarks::make("zakharov", 2);
    MmoConfig c = tiny(3);
    MmoResult res = run_ablation(c, obj, "cs");
    CHECK(res.per_optimizer_final.size() == 6);
    CHECK(res.per_optimizer_final.find("cs") == res.per_optimizer_final.end());

    CHECK_THROWS_AS(run_ablation(c, obj, "nope"), std::invalid_argument);
    MmoConfig solo = c;
    solo.roster = {"pso"};
    CHECK_THROWS_AS(run_ablation(solo, obj, "de"), std::invalid_argument);
    CHECK_THROWS_AS(run_ablation(solo, obj, "pso"), std::invalid_argument);  // empty remainder
}

TEST_CASE("cross-dimension table shape and inputs") {
    MmoConfig base = tiny(11);
    base.roster = {"pso", "batlevy", "fp"};
    auto table = run_cross_dimension(base, "zakharov", {2, 3}, {5, 8}, 2);
    REQUIRE(table.size() == 2);
    CHECK(table[0].dim == 2);
    CHECK(table[0].generations == 5);
    CHECK(table[1].dim == 3);
    CHECK(table[1].generations == 8);
    for (const auto& row : table) {
        CHECK(row.batlevy_mean >= 0.0);
        CHECK(row.mmo_mean >= 0.0);
        CHECK(row.batlevy_se >= 0.0);
        CHECK(row.mmo_se >= 0.0);
    }
    CHECK_THROWS_AS(run_cross_dimension(base, "zakharov", {2}, {5, 8}, 2), std::invalid_argument);
    CHECK_THROWS_AS(run_cross_dimension(base, "zakharov", {2}, {5}, 0), std::invalid_argument);
}

TEST_CASE("mean_se on hand examples") {
    auto [m1, s1] = mean_se({1.0, 2.0, 3.0});
    CHECK(m1 == doctest::Approx(2.0));
    CHECK(s1 == doctest::Approx(1.0 / std::sqrt(3.0)));
    auto [m2, s2] = mean_se({4.5});
    CHECK(m2 == 4.5);
    CHECK(s2 == 0.0);
    CHECK_THROWS_AS(mean_se({}), std::invalid_argument);
}

}  // TEST_SUITE
