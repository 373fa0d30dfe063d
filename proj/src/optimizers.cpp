#include "mmo/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mmo {
namespace {

// Shared population plumbing: uniform-random init, evaluation counting, and
// the strict-improvement global-best archive.  g* only ever improves during
// steps, so an injected team best survives until something beats it.
class PopulationBase : public Optimizer {
public:
    PopulationBase(std::string id, const Objective& obj, int n, std::uint64_t seed,
                   const OptimizerParams& params)
        : id_(std::move(id)),
          obj_(obj),
          n_(n),
          rng_(seed),
          levy_(params.get("lambda", 1.5)) {
        if (n_ < 1) throw std::invalid_argument(id_ + ": population size must be >= 1");
        x_.reserve(static_cast<std::size_t>(n_));
        fx_.resize(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) {
            x_.push_back(uniform_random_solution(obj_.bounds, rng_));
            fx_[static_cast<std::size_t>(i)] = eval(x_.back());
        }
        std::size_t k = best_index();
        gbest_ = {x_[k], fx_[k]};
    }

    const EvaluatedSolution& global_best() const override { return gbest_; }
    long long evaluation_count() const override { return evals_; }
    const std::string& id() const override { return id_; }
    int population_size() const override { return n_; }

    std::vector<EvaluatedSolution> population() const override {
        std::vector<EvaluatedSolution> out;
        out.reserve(x_.size());
        for (std::size_t i = 0; i < x_.size(); ++i) out.push_back({x_[i], fx_[i]});
        return out;
    }

protected:
    double eval(const SolutionVector& x) {
        ++evals_;
        return obj_(x);
    }

    void note_candidate(const SolutionVector& x, double f) {
        if (f < gbest_.fitness) gbest_ = {x, f};
    }

    std::size_t best_index() const {
        std::size_t k = 0;
        for (std::size_t i = 1; i < fx_.size(); ++i)
            if (fx_[i] < fx_[k]) k = i;
        return k;
    }

    std::size_t worst_index() const {
        std::size_t k = 0;
        for (std::size_t i = 1; i < fx_.size(); ++i)
            if (fx_[i] > fx_[k]) k = i;
        return k;
    }

    // Two distinct indices, both possibly equal to a caller-excluded slot only
    // if exclude == npos.
    void draw_distinct_pair(std::size_t& j, std::size_t& k) {
        j = rng_.uniform_index(static_cast<std::size_t>(n_));
        do {
            k = rng_.uniform_index(static_cast<std::size_t>(n_));
        } while (k == j);
    }

    std::string id_;
    const Objective& obj_;
    int n_;
    RngStream rng_;
    LevySampler levy_;
    std::vector<SolutionVector> x_;
    std::vector<double> fx_;
    EvaluatedSolution gbest_;
    long long evals_ = 0;
};

// ---------------------------------------------------------------------------
// PSO / PSOLevy: velocity update toward global and personal bests.  PSOLevy
// replaces the g*-attraction coefficient's uniform draw with a Levy draw.
// Velocities are capped at 20% of the domain width so the swarm cannot blow
// up numerically; positions are clamped to bounds.
class PsoOptimizer : public PopulationBase {
public:
    PsoOptimizer(std::string id, const Objective& obj, int n, std::uint64_t seed,
                 const OptimizerParams& params, bool levy_mode)
        : PopulationBase(std::move(id), obj, n, seed, params),
          levy_mode_(levy_mode),
          alpha_(params.get("alpha", 2.0)),
          beta_(params.get("beta", 2.0)),
          vcap_frac_(params.get("vcap_frac", 0.2)),
          v_(x_.size(), SolutionVector(static_cast<std::size_t>(obj.dim()), 0.0)),
          pb_(x_),
          pbf_(fx_) {}

    void step() override {
        int d = obj_.dim();
        for (int i = 0; i < n_; ++i) {
            auto iu = static_cast<std::size_t>(i);
            for (int c = 0; c < d; ++c) {
            auto cu = static_cast<std::size_t>(c);
                double e1 = levy_mode_ ? levy_.draw(rng_) : rng_.uniform();
                double e2 = rng_.uniform();
                double vel = v_[iu][cu] + alpha_ * e1 * (gbest_.position[cu] - x_[iu][cu]) +
                             beta_ * e2 * (pb_[iu][cu] - x_[iu][cu]);
                double cap = vcap_frac_ * obj_.bounds.width(c);
                v_[iu][cu] = std::clamp(vel, -cap, cap);
                x_[iu][cu] += v_[iu][cu];
            }
            obj_.bounds.clamp(x_[iu]);
            fx_[iu] = eval(x_[iu]);
            if (fx_[iu] < pbf_[iu]) {
                pb_[iu] = x_[iu];
                pbf_[iu] = fx_[iu];
                note_candidate(pb_[iu], pbf_[iu]);
            }
        }
    }

    void inject(const EvaluatedSolution& team_best) override {
        if (static_cast<int>(team_best.position.size()) != obj_.dim())
            throw std::invalid_argument(id_ + ": injected dimension mismatch");
        gbest_ = team_best;  // Alg. 1 line 7: unconditional overwrite
    }

private:
    bool levy_mode_;
    double alpha_, beta_, vcap_frac_;
    std::vector<SolutionVector> v_;
    std::vector<SolutionVector> pb_;
    std::vector<double> pbf_;
};

// ---------------------------------------------------------------------------
// DE/rand/1/bin.  Greedy selection keeps the better of trial and incumbent
// (ties go to the trial, the standard convention).
class DeOptimizer : public PopulationBase {
public:
    DeOptimizer(const Objective& obj, int n, std::uint64_t seed, const OptimizerParams& params)
        : PopulationBase("de", obj, n, seed, params),
          f_(params.get("F", 0.5)),
          cr_(params.get("Cr", 0.9)) {
        if (n < 4) throw std::invalid_argument("de: population size must be >= 4");
    }

    void step() override {
        int d = obj_.dim();
        SolutionVector trial(static_cast<std::size_t>(d));
        for (int i = 0; i < n_; ++i) {
            auto iu = static_cast<std::size_t>(i);
            std::size_t p, q, r;
            draw_three_distinct(iu, p, q, r);
            std::size_t forced = rng_.uniform_index(static_cast<std::size_t>(d));
            for (int c = 0; c < d; ++c) {
                auto cu = static_cast<std::size_t>(c);
                bool cross = rng_.uniform() <= cr_ || cu == forced;
                trial[cu] = cross ? x_[p][cu] + f_ * (x_[q][cu] - x_[r][cu]) : x_[iu][cu];
            }
            obj_.bounds.clamp(trial);
            double ft = eval(trial);
            if (ft <= fx_[iu]) {
                x_[iu] = trial;
                fx_[iu] = ft;
                note_candidate(trial, ft);
            }
        }
    }

    void inject(const EvaluatedSolution& team_best) override {
        if (static_cast<int>(team_best.position.size()) != obj_.dim())
            throw std::invalid_argument("de: injected dimension mismatch");
        std::size_t w = worst_index();
        x_[w] = team_best.position;
        fx_[w] = team_best.fitness;
        note_candidate(team_best.position, team_best.fitness);
    }

private:
    void draw_three_distinct(std::size_t self, std::size_t& p, std::size_t& q, std::size_t& r) {
        auto draw_not = [&](std::initializer_list<std::size_t> taken) {
            std::size_t v;
            bool clash;
            do {
                v = rng_.uniform_index(static_cast<std::size_t>(n_));
                clash = false;
                for (std::size_t t : taken)
                    if (v == t) clash = true;
            } while (clash);
            return v;
        };
        p = draw_not({self});
        q = draw_not({self, p});
        r = draw_not({self, p, q});
    }

    double f_, cr_;
};

// ---------------------------------------------------------------------------
// BAT / BATLevy.  Frequency-tuned velocity flights plus pulse-rate-gated local
// search around g*.  The local-search scale is A^(t), the average loudness of
// the population at this step.  Solution acceptance is
// loudness-gated, but g* is refreshed from every candidate: Yang's original
// formulation keeps the best-ever solution regardless of the acceptance gate
// (otherwise late improvements are thrown away as loudness decays).
class BatOptimizer : public PopulationBase {
public:
    BatOptimizer(std::string id, const Objective& obj, int n, std::uint64_t seed,
                 const OptimizerParams& params, bool levy_mode)
        : PopulationBase(std::move(id), obj, n, seed, params),
          levy_mode_(levy_mode),
          fmin_(params.get("fmin", 0.0)),
          fmax_(params.get("fmax", 2.0)),
          alpha_(params.get("alpha", 0.9)),
          gamma_(params.get("gamma", 0.9)),
          sigma_(params.get("sigma", 0.1)),
          v_(x_.size(), SolutionVector(static_cast<std::size_t>(obj.dim()), 0.0)),
          loud_(x_.size(), params.get("A0", 1.0)),
          r0_(x_.size(), params.get("r0", 0.5)),
          pulse_(r0_) {}

    void step() override {
        int d = obj_.dim();
        ++t_;
        double loud_mean = std::accumulate(loud_.begin(), loud_.end(), 0.0) /
                           static_cast<double>(loud_.size());
        SolutionVector cand(static_cast<std::size_t>(d));
        for (int i = 0; i < n_; ++i) {
            auto iu = static_cast<std::size_t>(i);
            double beta = rng_.uniform();
            double freq = fmin_ + beta * (fmax_ - fmin_);
            for (int c = 0; c < d; ++c) {
                auto cu = static_cast<std::size_t>(c);
                v_[iu][cu] += freq * (x_[iu][cu] - gbest_.position[cu]);
                cand[cu] = x_[iu][cu] + v_[iu][cu];
            }
            if (rng_.uniform() < pulse_[iu]) {
                // local random walk around the global best
                for (int c = 0; c < d; ++c) {
                    auto cu = static_cast<std::size_t>(c);
                    double eps = levy_mode_ ? levy_.draw(rng_) : rng_.gaussian();
                    cand[cu] = gbest_.position[cu] + sigma_ * eps * loud_mean;
                }
            }
            obj_.bounds.clamp(cand);
            double fc = eval(cand);
            if (fc < fx_[iu] && rng_.uniform() < loud_[iu]) {
                x_[iu] = cand;
                fx_[iu] = fc;
                loud_[iu] *= alpha_;
                pulse_[iu] = r0_[iu] * (1.0 - std::exp(-gamma_ * static_cast<double>(t_)));
            }
            note_candidate(cand, fc);
        }
    }

    void inject(const EvaluatedSolution& team_best) override {
        if (static_cast<int>(team_best.position.size()) != obj_.dim())
            throw std::invalid_argument(id_ + ": injected dimension mismatch");
        gbest_ = team_best;
    }

private:
    bool levy_mode_;
    double fmin_, fmax_, alpha_, gamma_, sigma_;
    std::vector<SolutionVector> v_;
    std::vector<double> loud_, r0_, pulse_;
    long long t_ = 0;
};

// ---------------------------------------------------------------------------
// Cuckoo search.  Levy phase: each nest emits a cuckoo at a Levy step scaled
// by alpha (default 0.01 x domain width per dimension) which replaces a
// uniformly random nest if better.  Abandonment: the worst floor(pa*n) nests
// are re-drawn through the biased random walk alpha * s (x) H(pa - eps) (x)
// (x_j - x_k).
class CuckooOptimizer : public PopulationBase {
public:
    CuckooOptimizer(const Objective& obj, int n, std::uint64_t seed, const OptimizerParams& params)
        : PopulationBase("cs", obj, n, seed, params), pa_(params.get("pa", 0.25)) {
        if (n < 3) throw std::invalid_argument("cs: population size must be >= 3");
        if (pa_ <= 0.0 || pa_ >= 1.0) throw std::invalid_argument("cs: pa must be in (0,1)");
        int d = obj.dim();
        alpha_.resize(static_cast<std::size_t>(d));
        bool has_override = params.values.count("alpha") != 0;
        for (int c = 0; c < d; ++c)
            alpha_[static_cast<std::size_t>(c)] =
                has_override ? params.get("alpha", 0.0) : 0.01 * obj.bounds.width(c);
    }

    void step() override {
        int d = obj_.dim();
        SolutionVector cand(static_cast<std::size_t>(d));
        // (a) Levy-flight phase
        for (int i = 0; i < n_; ++i) {
            auto iu = static_cast<std::size_t>(i);
            for (int c = 0; c < d; ++c) {
                auto cu = static_cast<std::size_t>(c);
                double step = truncate_step(alpha_[cu] * levy_.draw(rng_), obj_.bounds.width(c));
                cand[cu] = x_[iu][cu] + step;
            }
            obj_.bounds.clamp(cand);
            double fc = eval(cand);
            std::size_t j = rng_.uniform_index(static_cast<std::size_t>(n_));
            if (fc < fx_[j]) {
                x_[j] = cand;
                fx_[j] = fc;
            }
            note_candidate(cand, fc);
        }
        // (b) abandonment of the worst floor(pa*n) nests
        std::size_t m = static_cast<std::size_t>(pa_ * n_);
        if (m == 0) return;
        std::vector<std::size_t> order(static_cast<std::size_t>(n_));
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fx_[a] < fx_[b]; });
        for (std::size_t w = order.size() - m; w < order.size(); ++w) {
            std::size_t i = order[w];
            std::size_t j, k;
            draw_distinct_pair(j, k);
            for (int c = 0; c < d; ++c) {
                auto cu = static_cast<std::size_t>(c);
                double s = rng_.uniform();
                double heav = rng_.uniform() < pa_ ? 1.0 : 0.0;  // H(pa - eps)
                cand[cu] = x_[i][cu] + alpha_[cu] * s * heav * (x_[j][cu] - x_[k][cu]);
            }
            obj_.bounds.clamp(cand);
            double fc = eval(cand);
            x_[i] = cand;
            fx_[i] = fc;
            note_candidate(cand, fc);
        }
    }

    void inject(const EvaluatedSolution& team_best) override {
        if (static_cast<int>(team_best.position.size()) != obj_.dim())
            throw std::invalid_argument("cs: injected dimension mismatch");
        std::size_t k = rng_.uniform_index(static_cast<std::size_t>(n_));
        x_[k] = team_best.position;
        fx_[k] = team_best.fitness;
        note_candidate(team_best.position, team_best.fitness);
    }

private:
    double pa_;
    SolutionVector alpha_;
};

// ---------------------------------------------------------------------------
// Flower pollination.  Bernoulli(p) switches between global pollination (Levy
// step toward g*) and local pollination (uniform blend of a random pair);
// greedy per-agent acceptance.
class FlowerOptimizer : public PopulationBase {
public:
    FlowerOptimizer(const Objective& obj, int n, std::uint64_t seed, const OptimizerParams& params)
        : PopulationBase("fp", obj, n, seed, params),
          p_(params.get("p", 0.8)),
          gamma_(params.get("gamma", 0.1)) {
        if (n < 3) throw std::invalid_argument("fp: population size must be >= 3");
        if (p_ <= 0.0 || p_ >= 1.0) throw std::invalid_argument("fp: p must be in (0,1)");
    }

    void step() override {
        int d = obj_.dim();
        SolutionVector cand(static_cast<std::size_t>(d));
        for (int i = 0; i < n_; ++i) {
            auto iu = static_cast<std::size_t>(i);
            if (rng_.uniform() < p_) {
                for (int c = 0; c < d; ++c) {
                    auto cu = static_cast<std::size_t>(c);
                    double step =
                        gamma_ * levy_.draw(rng_) * (gbest_.position[cu] - x_[iu][cu]);
                    cand[cu] = x_[iu][cu] + truncate_step(step, obj_.bounds.width(c));
                }
            } else {
                std::size_t j, k;
                draw_distinct_pair(j, k);
                double eps = rng_.uniform();
                for (int c = 0; c < d; ++c) {
                    auto cu = static_cast<std::size_t>(c);
                    cand[cu] = x_[iu][cu] + eps * (x_[j][cu] - x_[k][cu]);
                }
            }
            obj_.bounds.clamp(cand);
            double fc = eval(cand);
            if (fc < fx_[iu]) {
                x_[iu] = cand;
                fx_[iu] = fc;
            }
            note_candidate(cand, fc);
        }
    }

    void inject(const EvaluatedSolution& team_best) override {
        if (static_cast<int>(team_best.position.size()) != obj_.dim())
            throw std::invalid_argument("fp: injected dimension mismatch");
        std::size_t k = rng_.uniform_index(static_cast<std::size_t>(n_));
        x_[k] = team_best.position;
        fx_[k] = team_best.fitness;
        note_candidate(team_best.position, team_best.fitness);
    }

private:
    double p_, gamma_;
};

}  // namespace

std::vector<std::string> optimizer_names() {
    return {"pso", "psolevy", "de", "bat", "batlevy", "cs", "fp"};
}

bool is_optimizer_name(const std::string& id) {
    auto all = optimizer_names();
    return std::find(all.begin(), all.end(), id) != all.end();
}

std::unique_ptr<Optimizer> make_optimizer(const std::string& id, const Objective& obj, int n,
                                          std::uint64_t seed, const OptimizerParams& params) {
    if (id == "pso") return std::make_unique<PsoOptimizer>("pso", obj, n, seed, params, false);
    if (id == "psolevy")
        return std::make_unique<PsoOptimizer>("psolevy", obj, n, seed, params, true);
    if (id == "de") return std::make_unique<DeOptimizer>(obj, n, seed, params);
    if (id == "bat") return std::make_unique<BatOptimizer>("bat", obj, n, seed, params, false);
    if (id == "batlevy")
        return std::make_unique<BatOptimizer>("batlevy", obj, n, seed, params, true);
    if (id == "cs") return std::make_unique<CuckooOptimizer>(obj, n, seed, params);
    if (id == "fp") return std::make_unique<FlowerOptimizer>(obj, n, seed, params);
    throw std::invalid_argument("unknown optimizer: " + id);
}

}  // namespace mmo
