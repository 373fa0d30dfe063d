// Experiment CLI: reproduces the benchmark tables and the SVM comparison as
// CSV artifacts, and exposes a generic `optimize` entry point.

#include <algorithm>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "mmo/mmo.hpp"
#include "mmo/svm.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string timestamp_name() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    localtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y%m%d-%H%M%S", &tm);
    return buf;
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(csv);
    while (std::getline(ss, item, ',')) {
        // trim spaces around each element
        std::size_t a = item.find_first_not_of(" \t");
        std::size_t b = item.find_last_not_of(" \t");
        if (a == std::string::npos) continue;
        out.push_back(item.substr(a, b - a + 1));
    }
    if (out.empty()) throw std::invalid_argument("empty list value");
    return out;
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    for (const auto& s : split_list(csv)) out.push_back(std::stoi(s));
    return out;
}

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    for (const auto& s : split_list(csv)) out.push_back(std::stod(s));
    return out;
}

// --set pso.alpha=1.8 style optimizer-parameter overrides
std::map<std::string, mmo::OptimizerParams> parse_overrides(const std::vector<std::string>& sets) {
    std::map<std::string, mmo::OptimizerParams> overrides;
    for (const auto& entry : sets) {
        std::size_t dot = entry.find('.');
        std::size_t eq = entry.find('=');
        if (dot == std::string::npos || eq == std::string::npos || eq < dot)
            throw std::invalid_argument("bad --set '" + entry + "' (expected optimizer.param=value)");
        std::string opt = entry.substr(0, dot);
        std::string key = entry.substr(dot + 1, eq - dot - 1);
        if (!mmo::is_optimizer_name(opt))
            throw std::invalid_argument("bad --set '" + entry + "': unknown optimizer '" + opt + "'");
        if (key.empty()) throw std::invalid_argument("bad --set '" + entry + "': empty parameter name");
        overrides[opt].values[key] = std::stod(entry.substr(eq + 1));
    }
    return overrides;
}

// CLI11 only reads config files attached to the root app, not to subcommands,
// so `--config` is expanded by hand: each `key = value` line of the file turns
// into `--key value` spliced in right after the subcommand name.  Keys the
// command line sets explicitly are skipped, which is what gives flags priority
// over the file.
std::vector<std::string> expand_config_args(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);

    std::string config_path;
    std::size_t config_pos = args.size(), config_len = 0;
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::size_t len = 0;
        std::string path;
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw std::invalid_argument("--config needs a file path");
            path = args[i + 1];
            len = 2;
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            len = 1;
        } else {
            continue;
        }
        if (!config_path.empty()) throw std::invalid_argument("--config given more than once");
        config_path = path;
        config_pos = i;
        config_len = len;
    }
    if (config_path.empty()) return args;
    args.erase(args.begin() + config_pos, args.begin() + config_pos + config_len);

    std::size_t sub_pos = args.size();
    for (std::size_t i = 0; i < args.size(); ++i)
        if (!args[i].empty() && args[i][0] != '-') {
            sub_pos = i;
            break;
        }
    if (sub_pos == args.size()) throw std::invalid_argument("--config requires a subcommand");

    std::set<std::string> given;  // option names the user typed out
    for (std::size_t i = sub_pos + 1; i < args.size(); ++i)
        if (args[i].rfind("--", 0) == 0) given.insert(args[i].substr(2, args[i].find('=') - 2));

    std::ifstream in(config_path);
    if (!in) throw std::invalid_argument("config: cannot open " + config_path);
    auto trim = [](std::string s) {
        s.erase(0, s.find_first_not_of(" \t\r"));
        s.erase(s.find_last_not_of(" \t\r") + 1);
        return s;
    };
    std::vector<std::string> inject;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const std::string where = "config: " + config_path + ":" + std::to_string(lineno);
        auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument(where + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.rfind("--", 0) == 0) key = key.substr(2);
        if (key.empty() || value.empty())
            throw std::invalid_argument(where + ": empty key or value");
        if (key == "config")
            throw std::invalid_argument(where + ": nested config files are not supported");
        if (given.count(key)) continue;
        inject.push_back("--" + key);
        inject.push_back(value);
    }
    args.insert(args.begin() + sub_pos + 1, inject.begin(), inject.end());
    return args;
}

struct RunDir {
    fs::path dir;
    RunDir(const std::string& out_root, const std::string& subcommand, std::string name) {
        if (name.empty()) name = timestamp_name();
        dir = fs::path(out_root) / subcommand / name;
        fs::create_directories(dir);
    }
    void write_resolved(std::vector<std::pair<std::string, std::string>> kv) const {
        std::sort(kv.begin(), kv.end());
        std::ofstream out(dir / "resolved-config");
        for (const auto& [k, v] : kv) out << k << " = " << v << "\n";
    }
    std::ofstream csv(const std::string& filename, const std::string& header) const {
        std::ofstream out(dir / filename);
        out << header << "\n";
        return out;
    }
};

std::vector<std::string> default_roster_list() { return mmo::optimizer_names(); }

std::string join(const std::vector<std::string>& xs, const std::string& sep = ",") {
    std::string out;
    for (const auto& x : xs) out += (out.empty() ? "" : sep) + x;
    return out;
}

// ---------------------------------------------------------------- bench-single

struct BenchSingleOpts {
    std::string benchmark = "rosenbrock";
    int dim = 15;
    std::string optimizers = join(default_roster_list());
    std::string agents = "20,50,100";
    int generations = 2000;
    int trials = 10;
    std::uint64_t seed = 0;
    std::string out = "results", name;
    std::vector<std::string> sets;
};

void run_bench_single(const BenchSingleOpts& o) {
    mmo::Objective obj = mmo::benchmarks::make(o.benchmark, o.dim);
    auto opts = split_list(o.optimizers);
    auto agent_counts = parse_int_list(o.agents);
    auto overrides = parse_overrides(o.sets);

    RunDir run(o.out, "bench-single", o.name);
    run.write_resolved({{"subcommand", "bench-single"},
                        {"benchmark", o.benchmark},
                        {"dim", std::to_string(o.dim)},
                        {"optimizers", join(opts)},
                        {"agents", o.agents},
                        {"generations", std::to_string(o.generations)},
                        {"trials", std::to_string(o.trials)},
                        {"seed", std::to_string(o.seed)},
                        {"set", join(o.sets, " ")}});

    auto csv = run.csv("results.csv", "objective,optimizer,agents,mean_error,se_error");
    for (const auto& name : opts) {
        if (!mmo::is_optimizer_name(name))
            throw std::invalid_argument("unknown optimizer '" + name + "'");
        for (int n : agent_counts) {
            mmo::MmoConfig config;
            config.roster = {name};
            config.agents = n;
            config.generations = o.generations;
            config.frequency = o.generations + 1;  // standalone: no broadcasts
            config.overrides = overrides;
            std::vector<double> errs;
            for (int t = 0; t < o.trials; ++t) {
                config.master_seed = o.seed + static_cast<std::uint64_t>(t);
                errs.push_back(mmo::run_mmo(config, obj).best.fitness);
            }
            auto [mean, se] = mmo::mean_se(errs);
            csv << o.benchmark << "," << name << "," << n << "," << fmt_g(mean) << ","
                << fmt_g(se) << "\n";
        }
    }
    std::cout << (run.dir / "results.csv").string() << "\n";
}

// ------------------------------------------------------------------- bench-mmo

struct BenchMmoOpts {
    std::string benchmark = "rosenbrock";
    int dim = 15;
    std::string schemes = "rank,exponential,best";
    std::string frequencies = "1,10,50,500,1000,2000";
    std::string roster = join(default_roster_list());
    int agents = 100;
    int generations = 2000;
    int trials = 10;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out = "results", name;
    std::vector<std::string> sets;
};

void run_bench_mmo(const BenchMmoOpts& o) {
    mmo::Objective obj = mmo::benchmarks::make(o.benchmark, o.dim);
    auto schemes = split_list(o.schemes);
    auto freqs = parse_int_list(o.frequencies);

    RunDir run(o.out, "bench-mmo", o.name);
    run.write_resolved({{"subcommand", "bench-mmo"},
                        {"benchmark", o.benchmark},
                        {"dim", std::to_string(o.dim)},
                        {"schemes", join(schemes)},
                        {"frequencies", o.frequencies},
                        {"roster", o.roster},
                        {"agents", std::to_string(o.agents)},
                        {"generations", std::to_string(o.generations)},
                        {"trials", std::to_string(o.trials)},
                        {"seed", std::to_string(o.seed)},
                        {"threads", std::to_string(o.threads)},
                        {"set", join(o.sets, " ")}});

    auto csv = run.csv("results.csv", "objective,frequency,scheme,mean_error,se_error");
    for (int freq : freqs) {
        for (const auto& scheme : schemes) {
            mmo::MmoConfig config;
            config.roster = split_list(o.roster);
            config.agents = o.agents;
            config.scheme = mmo::scheme_from_name(scheme);
            config.frequency = freq;
            config.generations = o.generations;
            config.threads = o.threads;
            config.overrides = parse_overrides(o.sets);
            std::vector<double> errs;
            for (int t = 0; t < o.trials; ++t) {
                config.master_seed = o.seed + static_cast<std::uint64_t>(t);
                errs.push_back(mmo::run_mmo(config, obj).best.fitness);
            }
            auto [mean, se] = mmo::mean_se(errs);
            csv << o.benchmark << "," << freq << "," << scheme << "," << fmt_g(mean) << ","
                << fmt_g(se) << "\n";
        }
    }
    std::cout << (run.dir / "results.csv").string() << "\n";
}

// -------------------------------------------------------------------- ablation

struct AblationOpts {
    std::string benchmark = "rosenbrock";
    int dim = 15;
    std::string scheme = "exponential";
    int frequency = 1;
    std::string roster = join(default_roster_list());
    int agents = 100;
    int generations = 2000;
    int trials = 10;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out = "results", name;
    std::vector<std::string> sets;
};

void run_ablation_cmd(const AblationOpts& o) {
    mmo::Objective obj = mmo::benchmarks::make(o.benchmark, o.dim);
    mmo::MmoConfig base;
    base.roster = split_list(o.roster);
    base.agents = o.agents;
    base.scheme = mmo::scheme_from_name(o.scheme);
    base.frequency = o.frequency;
    base.generations = o.generations;
    base.threads = o.threads;
    base.overrides = parse_overrides(o.sets);

    RunDir run(o.out, "ablation", o.name);
    run.write_resolved({{"subcommand", "ablation"},
                        {"benchmark", o.benchmark},
                        {"dim", std::to_string(o.dim)},
                        {"scheme", o.scheme},
                        {"frequency", std::to_string(o.frequency)},
                        {"roster", o.roster},
                        {"agents", std::to_string(o.agents)},
                        {"generations", std::to_string(o.generations)},
                        {"trials", std::to_string(o.trials)},
                        {"seed", std::to_string(o.seed)},
                        {"threads", std::to_string(o.threads)},
                        {"set", join(o.sets, " ")}});

    auto csv = run.csv("results.csv", "excluded,mean_error,se_error");
    auto emit_row = [&](const std::string& label, const std::string& excluded) {
        std::vector<double> errs;
        for (int t = 0; t < o.trials; ++t) {
            mmo::MmoConfig config = base;
            config.master_seed = o.seed + static_cast<std::uint64_t>(t);
            errs.push_back(excluded.empty() ? mmo::run_mmo(config, obj).best.fitness
                                            : mmo::run_ablation(config, obj, excluded).best.fitness);
        }
        auto [mean, se] = mmo::mean_se(errs);
        csv << label << "," << fmt_g(mean) << "," << fmt_g(se) << "\n";
    };
    emit_row("none", "");
    for (const auto& name : base.roster) emit_row(name, name);
    std::cout << (run.dir / "results.csv").string() << "\n";
}

// ------------------------------------------------------------------- cross-dim

struct CrossDimOpts {
    std::string benchmark = "rosenbrock";
    std::string dims = "5,10,15,25";
    std::string generations = "2000,2000,2000,4000";
    std::string scheme = "exponential";
    int frequency = 1;
    std::string roster = join(default_roster_list());
    int agents = 100;
    int trials = 10;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out = "results", name;
    std::vector<std::string> sets;
};

void run_cross_dim_cmd(const CrossDimOpts& o) {
    mmo::MmoConfig base;
    base.roster = split_list(o.roster);
    base.agents = o.agents;
    base.scheme = mmo::scheme_from_name(o.scheme);
    base.frequency = o.frequency;
    base.master_seed = o.seed;
    base.threads = o.threads;
    base.overrides = parse_overrides(o.sets);

    RunDir run(o.out, "cross-dim", o.name);
    run.write_resolved({{"subcommand", "cross-dim"},
                        {"benchmark", o.benchmark},
                        {"dims", o.dims},
                        {"generations", o.generations},
                        {"scheme", o.scheme},
                        {"frequency", std::to_string(o.frequency)},
                        {"roster", o.roster},
                        {"agents", std::to_string(o.agents)},
                        {"trials", std::to_string(o.trials)},
                        {"seed", std::to_string(o.seed)},
                        {"threads", std::to_string(o.threads)},
                        {"set", join(o.sets, " ")}});

    auto table = mmo::run_cross_dimension(base, o.benchmark, parse_int_list(o.dims),
                                          parse_int_list(o.generations), o.trials);
    auto csv = run.csv("results.csv",
                       "dimension,generations,batlevy_mean,batlevy_se,mmo_mean,mmo_se");
    for (const auto& row : table)
        csv << row.dim << "," << row.generations << "," << fmt_g(row.batlevy_mean) << ","
            << fmt_g(row.batlevy_se) << "," << fmt_g(row.mmo_mean) << "," << fmt_g(row.mmo_se)
            << "\n";
    std::cout << (run.dir / "results.csv").string() << "\n";
}

// ------------------------------------------------------------------------- svm

struct SvmOpts {
    std::string data;                 // path to the dataset file
    std::string format = "bcw";       // bcw | image_segmentation
    std::string trainer = "both";     // sgd | mmo | both
    std::string lambdas = "0";
    std::string alphas = "0.01";
    std::string schemes = "best";
    std::string frequencies = "1";
    int iterations = 1000;
    int seeds = 5;
    std::uint64_t seed = 0;
    std::string roster = join(default_roster_list());
    int agents = 100;
    int threads = 0;
    std::string out = "results", name;
    std::vector<std::string> sets;
};

// filename-safe rendering of a numeric hyperparameter
std::string num_token(double v) {
    std::string s = fmt_g(v);
    std::erase(s, '+');
    std::replace(s.begin(), s.end(), '.', 'p');
    return s;
}

void run_svm_cmd(const SvmOpts& o) {
    if (o.data.empty()) throw std::invalid_argument("svm: --data is required");
    mmo::svm::Dataset data = mmo::svm::load_dataset(o.data, o.format);

    RunDir run(o.out, "svm", o.name);
    fs::create_directories(run.dir / "trajectories");
    run.write_resolved({{"subcommand", "svm"},
                        {"data", o.data},
                        {"format", o.format},
                        {"trainer", o.trainer},
                        {"lambdas", o.lambdas},
                        {"alphas", o.alphas},
                        {"schemes", o.schemes},
                        {"frequencies", o.frequencies},
                        {"iterations", std::to_string(o.iterations)},
                        {"seeds", std::to_string(o.seeds)},
                        {"seed", std::to_string(o.seed)},
                        {"roster", o.roster},
                        {"agents", std::to_string(o.agents)},
                        {"threads", std::to_string(o.threads)},
                        {"set", join(o.sets, " ")}});

    auto write_trajectory = [&](const std::string& stem,
                                const std::vector<std::pair<int, double>>& traj) {
        std::ofstream out(run.dir / "trajectories" / (stem + ".csv"));
        out << "iteration,loss\n";
        for (const auto& [it, loss] : traj) out << it << "," << fmt_g(loss) << "\n";
    };

    auto csv = run.csv("results.csv", "dataset,trainer,config,loss,train_acc,valid_acc,test_acc");
    const bool do_sgd = o.trainer == "both" || o.trainer == "sgd";
    const bool do_mmo = o.trainer == "both" || o.trainer == "mmo";
    if (!do_sgd && !do_mmo) throw std::invalid_argument("svm: --trainer must be sgd, mmo or both");

    struct Cell {
        double loss = 0, train = 0, valid = 0, test = 0;
    };
    auto accumulate = [&](Cell& cell, const mmo::svm::TrainResult& res,
                          const mmo::svm::DataSplit& split, double lambda) {
        cell.loss += res.trajectory.back().second;
        cell.train += mmo::svm::accuracy(res.model, split.train);
        cell.valid += mmo::svm::accuracy(res.model, split.valid);
        cell.test += mmo::svm::accuracy(res.model, split.test);
        (void)lambda;
    };
    auto emit = [&](const std::string& trainer, const std::string& config, Cell cell) {
        double k = static_cast<double>(o.seeds);
        csv << o.format << "," << trainer << "," << config << "," << fmt_g(cell.loss / k) << ","
            << fmt_g(cell.train / k) << "," << fmt_g(cell.valid / k) << ","
            << fmt_g(cell.test / k) << "\n";
    };

    if (do_sgd) {
        for (double lambda : parse_double_list(o.lambdas)) {
            for (double alpha : parse_double_list(o.alphas)) {
                Cell cell;
                for (int k = 0; k < o.seeds; ++k) {
                    std::uint64_t s = o.seed + static_cast<std::uint64_t>(k);
                    auto split = mmo::svm::split_dataset(data, s);
                    mmo::svm::SvmHyperparams hp{lambda, alpha, o.iterations};
                    auto res = mmo::svm::sgd_train(split, hp, s);
                    write_trajectory("sgd-l" + num_token(lambda) + "-a" + num_token(alpha) +
                                         "-s" + std::to_string(k),
                                     res.trajectory);
                    accumulate(cell, res, split, lambda);
                }
                emit("sgd", "lambda=" + fmt_g(lambda) + " alpha=" + fmt_g(alpha), cell);
            }
        }
    }
    if (do_mmo) {
        for (double lambda : parse_double_list(o.lambdas)) {
            for (int freq : parse_int_list(o.frequencies)) {
                for (const auto& scheme : split_list(o.schemes)) {
                    Cell cell;
                    for (int k = 0; k < o.seeds; ++k) {
                        std::uint64_t s = o.seed + static_cast<std::uint64_t>(k);
                        auto split = mmo::svm::split_dataset(data, s);
                        mmo::MmoConfig config;
                        config.roster = split_list(o.roster);
                        config.agents = o.agents;
                        config.scheme = mmo::scheme_from_name(scheme);
                        config.frequency = freq;
                        config.generations = o.iterations;
                        config.master_seed = s;
                        config.threads = o.threads;
                        config.overrides = parse_overrides(o.sets);
                        auto res = mmo::svm::mmo_train(split, lambda, config);
                        write_trajectory("mmo-l" + num_token(lambda) + "-f" +
                                             std::to_string(freq) + "-" + scheme + "-s" +
                                             std::to_string(k),
                                         res.trajectory);
                        accumulate(cell, res, split, lambda);
                    }
                    emit("mmo", "lambda=" + fmt_g(lambda) + " f=" + std::to_string(freq) +
                                    " scheme=" + scheme,
                         cell);
                }
            }
        }
    }
    std::cout << (run.dir / "results.csv").string() << "\n";
}

// -------------------------------------------------------------------- optimize

// Persistent external evaluator: one whitespace-separated position per line on
// its stdin, one fitness value per line on its stdout.
class EvaluatorProcess {
  public:
    explicit EvaluatorProcess(const std::string& command) {
        int to_child[2], from_child[2];
        if (pipe(to_child) != 0 || pipe(from_child) != 0)
            throw std::runtime_error("optimize: cannot create evaluator pipes");
        pid_ = fork();
        if (pid_ < 0) throw std::runtime_error("optimize: cannot fork evaluator");
        if (pid_ == 0) {
            dup2(to_child[0], STDIN_FILENO);
            dup2(from_child[1], STDOUT_FILENO);
            close(to_child[0]);
            close(to_child[1]);
            close(from_child[0]);
            close(from_child[1]);
            execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
            _exit(127);
        }
        close(to_child[0]);
        close(from_child[1]);
        in_ = fdopen(to_child[1], "w");
        out_ = fdopen(from_child[0], "r");
        if (!in_ || !out_) throw std::runtime_error("optimize: cannot open evaluator streams");
    }

    ~EvaluatorProcess() {
        if (in_) fclose(in_);
        if (out_) fclose(out_);
        if (pid_ > 0) {
            int status = 0;
            waitpid(pid_, &status, 0);
        }
    }

    double evaluate(const std::vector<double>& x) {
        for (std::size_t i = 0; i < x.size(); ++i)
            std::fprintf(in_, i + 1 < x.size() ? "%.17g " : "%.17g\n", x[i]);
        if (std::fflush(in_) != 0) throw std::runtime_error("optimize: evaluator closed its input");
        char* line = nullptr;
        std::size_t cap = 0;
        ssize_t len = getline(&line, &cap, out_);
        if (len <= 0) {
            free(line);
            throw std::runtime_error("optimize: evaluator produced no output");
        }
        char* end = nullptr;
        double v = std::strtod(line, &end);
        bool ok = end != line;
        free(line);
        if (!ok) throw std::runtime_error("optimize: evaluator output was not a number");
        return v;
    }

  private:
    pid_t pid_ = -1;
    FILE* in_ = nullptr;
    FILE* out_ = nullptr;
};

struct OptimizeOpts {
    std::string benchmark;            // named objective ...
    std::string evaluator;            // ... or external command
    int dim = 0;
    double lower = -10.0, upper = 10.0;
    std::string roster = join(default_roster_list());
    std::string scheme = "best";
    int frequency = 10;
    int generations = 1000;
    int agents = 100;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out = "results", name;
    std::vector<std::string> sets;
};

void run_optimize_cmd(const OptimizeOpts& o) {
    if (o.benchmark.empty() == o.evaluator.empty())
        throw std::invalid_argument("optimize: pass exactly one of --benchmark or --evaluator");

    mmo::MmoConfig config;
    config.roster = split_list(o.roster);
    config.agents = o.agents;
    config.scheme = mmo::scheme_from_name(o.scheme);
    config.frequency = o.frequency;
    config.generations = o.generations;
    config.master_seed = o.seed;
    config.threads = o.threads;
    config.overrides = parse_overrides(o.sets);

    RunDir run(o.out, "optimize", o.name);
    run.write_resolved({{"subcommand", "optimize"},
                        {"benchmark", o.benchmark},
                        {"evaluator", o.evaluator},
                        {"dim", std::to_string(o.dim)},
                        {"lower", fmt_g(o.lower)},
                        {"upper", fmt_g(o.upper)},
                        {"roster", o.roster},
                        {"scheme", o.scheme},
                        {"frequency", std::to_string(o.frequency)},
                        {"generations", std::to_string(o.generations)},
                        {"agents", std::to_string(o.agents)},
                        {"seed", std::to_string(o.seed)},
                        {"threads", std::to_string(o.threads)},
                        {"set", join(o.sets, " ")}});

    auto started = std::chrono::steady_clock::now();
    mmo::MmoResult result;
    if (!o.benchmark.empty()) {
        int dim = o.dim > 0 ? o.dim : 15;
        result = mmo::run_mmo(config, mmo::benchmarks::make(o.benchmark, dim));
    } else {
        if (o.dim < 1) throw std::invalid_argument("optimize: --evaluator requires --dim");
        if (o.upper <= o.lower) throw std::invalid_argument("optimize: need --lower < --upper");
        EvaluatorProcess child(o.evaluator);
        mmo::Objective obj("external", mmo::Bounds(static_cast<std::size_t>(o.dim), o.lower, o.upper),
                           [&child](const mmo::SolutionVector& x) { return child.evaluate(x); });
        config.threads = 1;  // the child process handles one request at a time
        result = mmo::run_mmo(config, obj);
    }
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    json doc;
    doc["best_position"] = result.best.position;
    doc["best_fitness"] = result.best.fitness;
    doc["evaluations"] = result.evaluation_count;

    // the on-disk copy stays bit-reproducible, so wall time goes to stdout only
    std::ofstream(run.dir / "best.json") << doc.dump(2) << "\n";
    doc["wall_time_seconds"] = wall;
    std::cout << doc.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    // a dying external evaluator must surface as an error, not kill us
    std::signal(SIGPIPE, SIG_IGN);

    CLI::App app{"Multi-metaheuristic optimizer experiment runner"};
    app.require_subcommand(1);
    std::string config_file;  // consumed before parsing; registered for --help only

    BenchSingleOpts bs;
    auto* bench_single = app.add_subcommand("bench-single", "Standalone optimizer benchmarks");
    bench_single->add_option("--config", config_file, "Key = value defaults file (flags override it)");
    bench_single->add_option("--benchmark", bs.benchmark, "Objective name");
    bench_single->add_option("--dim", bs.dim, "Problem dimension");
    bench_single->add_option("--optimizers", bs.optimizers, "Comma list of optimizers");
    bench_single->add_option("--agents", bs.agents, "Comma list of population sizes");
    bench_single->add_option("--generations", bs.generations, "Generations per run");
    bench_single->add_option("--trials", bs.trials, "Seeds per cell");
    bench_single->add_option("--seed", bs.seed, "Base seed");
    bench_single->add_option("--out", bs.out, "Output root directory");
    bench_single->add_option("--name", bs.name, "Run directory name (default: timestamp)");
    bench_single->add_option("--set", bs.sets, "Optimizer parameter override optimizer.param=value");

    BenchMmoOpts bm;
    auto* bench_mmo = app.add_subcommand("bench-mmo", "MMO scheme/frequency sweeps");
    bench_mmo->add_option("--config", config_file, "Key = value defaults file (flags override it)");
    bench_mmo->add_option("--benchmark", bm.benchmark, "Objective name");
    bench_mmo->add_option("--dim", bm.dim, "Problem dimension");
    bench_mmo->add_option("--schemes", bm.schemes, "Comma list of communication schemes");
    bench_mmo->add_option("--frequencies", bm.frequencies, "Comma list of frequencies");
    bench_mmo->add_option("--roster", bm.roster, "Comma list of optimizers");
    bench_mmo->add_option("--agents", bm.agents, "Agents per optimizer");
    bench_mmo->add_option("--generations", bm.generations, "Generations per run");
    bench_mmo->add_option("--trials", bm.trials, "Seeds per cell");
    bench_mmo->add_option("--seed", bm.seed, "Base seed");
    bench_mmo->add_option("--threads", bm.threads, "Worker threads (0 = MMO_THREADS or roster size)");
    bench_mmo->add_option("--out", bm.out, "Output root directory");
    bench_mmo->add_option("--name", bm.name, "Run directory name (default: timestamp)");
    bench_mmo->add_option("--set", bm.sets, "Optimizer parameter override optimizer.param=value");

    AblationOpts ab;
    auto* ablation = app.add_subcommand("ablation", "Single-exclusion ablation study");
    ablation->add_option("--config", config_file, "Key = value defaults file (flags override it)");
    ablation->add_option("--benchmark", ab.benchmark, "Objective name");
    ablation->add_option("--dim", ab.dim, "Problem dimension");
    ablation->add_option("--scheme", ab.scheme, "Communication scheme");
    ablation->add_option("--frequency", ab.frequency, "Communication frequency");
    ablation->add_option("--roster", ab.roster, "Comma list of optimizers");
    ablation->add_option("--agents", ab.agents, "Agents per optimizer");
    ablation->add_option("--generations", ab.generations, "Generations per run");
    ablation->add_option("--trials", ab.trials, "Seeds per row");
    ablation->add_option("--seed", ab.seed, "Base seed");
    ablation->add_option("--threads", ab.threads, "Worker threads");
    ablation->add_option("--out", ab.out, "Output root directory");
    ablation->add_option("--name", ab.name, "Run directory name (default: timestamp)");
    ablation->add_option("--set", ab.sets, "Optimizer parameter override optimizer.param=value");

    CrossDimOpts cd;
    auto* cross_dim = app.add_subcommand("cross-dim", "MMO vs BATLevy across dimensions");
    cross_dim->add_option("--config", config_file, "Key = value defaults file (flags override it)");
    cross_dim->add_option("--benchmark", cd.benchmark, "Objective name");
    cross_dim->add_option("--dims", cd.dims, "Comma list of dimensions");
    cross_dim->add_option("--generations", cd.generations, "Comma list of generations per dimension");
    cross_dim->add_option("--scheme", cd.scheme, "Communication scheme");
    cross_dim->add_option("--frequency", cd.frequency, "Communication frequency");
    cross_dim->add_option("--roster", cd.roster, "Comma list of optimizers");
    cross_dim->add_option("--agents", cd.agents, "Agents per optimizer");
    cross_dim->add_option("--trials", cd.trials, "Seeds per cell");
    cross_dim->add_option("--seed", cd.seed, "Base seed");
    cross_dim->add_option("--threads", cd.threads, "Worker threads");
    cross_dim->add_option("--out", cd.out, "Output root directory");
    cross_dim->add_option("--name", cd.name, "Run directory name (default: timestamp)");
    cross_dim->add_option("--set", cd.sets, "Optimizer parameter override optimizer.param=value");

    SvmOpts sv;
    auto* svm_cmd = app.add_subcommand("svm", "SGD vs MMO linear-SVM training");
    svm_cmd->add_option("--config", config_file, "Key = value defaults file (flags override it)");
    svm_cmd->add_option("--data", sv.data, "Dataset file path");
    svm_cmd->add_option("--format", sv.format, "Dataset format: bcw | image_segmentation");
    svm_cmd->add_option("--trainer", sv.trainer, "sgd | mmo | both");
    svm_cmd->add_option("--lambdas", sv.lambdas, "Comma list of regularization rates");
    svm_cmd->add_option("--alphas", sv.alphas, "Comma list of SGD learning rates");
    svm_cmd->add_option("--schemes", sv.schemes, "Comma list of MMO schemes");
    svm_cmd->add_option("--frequencies", sv.frequencies, "Comma list of MMO frequencies");
    svm_cmd->add_option("--iterations", sv.iterations, "Training iterations");
    svm_cmd->add_option("--seeds", sv.seeds, "Number of seeds per configuration");
    svm_cmd->add_option("--seed", sv.seed, "Base seed");
    svm_cmd->add_option("--roster", sv.roster, "Comma list of optimizers for MMO");
    svm_cmd->add_option("--agents", sv.agents, "Agents per optimizer for MMO");
    svm_cmd->add_option("--threads", sv.threads, "Worker threads");
    svm_cmd->add_option("--out", sv.out, "Output root directory");
    svm_cmd->add_option("--name", sv.name, "Run directory name (default: timestamp)");
    svm_cmd->add_option("--set", sv.sets, "Optimizer parameter override optimizer.param=value");

    OptimizeOpts op;
    auto* optimize = app.add_subcommand("optimize", "Optimize a benchmark or external evaluator");
    optimize->add_option("--config", config_file, "Key = value defaults file (flags override it)");
    optimize->add_option("--benchmark", op.benchmark, "Named objective");
    optimize->add_option("--evaluator", op.evaluator, "External evaluator command (line protocol)");
    optimize->add_option("--dim", op.dim, "Problem dimension");
    optimize->add_option("--lower", op.lower, "Lower bound (external evaluator)");
    optimize->add_option("--upper", op.upper, "Upper bound (external evaluator)");
    optimize->add_option("--roster", op.roster, "Comma list of optimizers");
    optimize->add_option("--scheme", op.scheme, "Communication scheme");
    optimize->add_option("--frequency", op.frequency, "Communication frequency");
    optimize->add_option("--generations", op.generations, "Generations");
    optimize->add_option("--agents", op.agents, "Agents per optimizer");
    optimize->add_option("--seed", op.seed, "Master seed");
    optimize->add_option("--threads", op.threads, "Worker threads");
    optimize->add_option("--out", op.out, "Output root directory");
    optimize->add_option("--name", op.name, "Run directory name (default: timestamp)");
    optimize->add_option("--set", op.sets, "Optimizer parameter override optimizer.param=value");

    std::vector<std::string> args;
    try {
        args = expand_config_args(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::reverse(args.begin(), args.end());  // App::parse(vector) wants reversed argv

    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (bench_single->parsed()) run_bench_single(bs);
        if (bench_mmo->parsed()) run_bench_mmo(bm);
        if (ablation->parsed()) run_ablation_cmd(ab);
        if (cross_dim->parsed()) run_cross_dim_cmd(cd);
        if (svm_cmd->parsed()) run_svm_cmd(sv);
        if (optimize->parsed()) run_optimize_cmd(op);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
