// Times the serial reference path (threads=1) against the OpenMP path (one
// thread per roster optimizer) on identical configurations.  The two must stay
// bitwise identical -- each optimizer owns its RNG sub-stream, so threading
// only changes who executes the step, never the arithmetic.

#include <chrono>
#include <cstdio>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mmo/benchmarks.hpp"
#include "mmo/mmo.hpp"

using namespace mmo;
using Clock = std::chrono::steady_clock;

namespace {

struct Workload {
    const char* benchmark;
    int dim;
    int generations;
};

// best-of-3 wall time; the result is the same every rep, so keep any
double time_run(const MmoConfig& config, const Objective& obj, MmoResult& out) {
    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
        auto t0 = Clock::now();
        MmoResult r = run_mmo(config, obj);
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        if (secs < best) {
            best = secs;
            out = std::move(r);
        }
    }
    return best;
}

bool identical(const MmoResult& a, const MmoResult& b) {
    return a.best.fitness == b.best.fitness && a.best.position == b.best.position &&
           a.trajectory == b.trajectory && a.evaluation_count == b.evaluation_count;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp: enabled, max %d hardware threads\n", omp_get_max_threads());
#else
    std::printf("openmp: not compiled in; both columns run the serial path\n");
#endif
    std::printf("%-12s %4s %6s %10s %10s %8s %10s\n", "benchmark", "dim", "gens", "serial_s",
                "parallel_s", "speedup", "identical");

    const Workload loads[] = {
        {"zakharov", 15, 300},
        {"griewank", 15, 300},
        {"rosenbrock", 25, 300},
    };
    bool all_same = true;
    for (const auto& w : loads) {
        Objective obj = benchmarks::make(w.benchmark, w.dim);
        MmoConfig base;
        base.generations = w.generations;
        base.frequency = 10;
        base.master_seed = 42;

        MmoConfig serial = base;
        serial.threads = 1;
        MmoConfig parallel = base;
        parallel.threads = static_cast<int>(base.roster.size());

        MmoResult rs, rp;
        double ts = time_run(serial, obj, rs);
        double tp = time_run(parallel, obj, rp);
        bool same = identical(rs, rp);
        all_same = all_same && same;
        std::printf("%-12s %4d %6d %10.3f %10.3f %8.2f %10s\n", w.benchmark, w.dim,
                    w.generations, ts, tp, ts / tp, same ? "yes" : "no");
    }
    if (!all_same) std::printf("MISMATCH: parallel run diverged from the serial reference\n");
    return all_same ? 0 : 1;
}
