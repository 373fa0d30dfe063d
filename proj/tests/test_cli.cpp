// End-to-end tests that exec the built CLI binary (path injected via
// MMO_CLI_PATH) and inspect its exit codes and artifacts.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "doctest.h"
#include "mmo/synthetic.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = MMO_CLI_PATH;

fs::path case_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "mmo-cli-tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args, const fs::path& log_dir) {
    std::string cmd = kCli + " " + args + " >" + (log_dir / "stdout.txt").string() + " 2>" +
                      (log_dir / "stderr.txt").string();
    int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> read_lines(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

int field_count(const std::string& csv_line) {
    return static_cast<int>(std::count(csv_line.begin(), csv_line.end(), ',')) + 1;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("bench-single: artifacts, shape and bit-reproducibility") {
    fs::path dir = case_dir("bench-single");
    std::string common = "bench-single --benchmark zakharov --dim 2 --optimizers pso,de "
                         "--agents 5,8 --generations 20 --trials 2 --seed 7 --out " +
                         (dir / "results").string();
    REQUIRE(run_cli(common + " --name a", dir) == 0);
    REQUIRE(run_cli(common + " --name b", dir) == 0);

    fs::path run_a = dir / "results" / "bench-single" / "a";
    CHECK(fs::exists(run_a / "resolved-config"));
    std::string resolved = read_file(run_a / "resolved-config");
    CHECK(resolved.find("benchmark = zakharov") != std::string::npos);
    CHECK(resolved.find("seed = 7") != std::string::npos);

    auto lines = read_lines(run_a / "results.csv");
    REQUIRE(lines.size() == 5);  // header + 2 optimizers x 2 agent counts
    CHECK(lines[0] == "objective,optimizer,agents,mean_error,se_error");
    CHECK(lines[1].rfind("zakharov,pso,5,", 0) == 0);
    CHECK(lines[4].rfind("zakharov,de,8,", 0) == 0);

    CHECK(read_file(run_a / "results.csv") ==
          read_file(dir / "results" / "bench-single" / "b" / "results.csv"));
}

TEST_CASE("bench-mmo: grid rows and reproducibility") {
    fs::path dir = case_dir("bench-mmo");
    std::string common = "bench-mmo --benchmark griewank --dim 2 --roster pso,de,fp "
                         "--schemes rank,best --frequencies 1,5 --agents 6 --generations 25 "
                         "--trials 2 --seed 3 --threads 1 --out " +
                         (dir / "results").string();
    REQUIRE(run_cli(common + " --name a", dir) == 0);
    REQUIRE(run_cli(common + " --name b", dir) == 0);

    fs::path csv = dir / "results" / "bench-mmo" / "a" / "results.csv";
    auto lines = read_lines(csv);
    REQUIRE(lines.size() == 5);  // header + 2 freqs x 2 schemes
    CHECK(lines[0] == "objective,frequency,scheme,mean_error,se_error");
    CHECK(lines[1].rfind("griewank,1,rank,", 0) == 0);
    CHECK(lines[2].rfind("griewank,1,best,", 0) == 0);
    CHECK(lines[3].rfind("griewank,5,rank,", 0) == 0);

    CHECK(read_file(csv) == read_file(dir / "results" / "bench-mmo" / "b" / "results.csv"));
}

TEST_CASE("ablation: one row per excluded optimizer plus baseline") {
    fs::path dir = case_dir("ablation");
    REQUIRE(run_cli("ablation --benchmark zakharov --dim 2 --roster pso,de,fp --scheme best "
                    "--frequency 2 --agents 5 --generations 15 --trials 2 --name a --out " +
                        (dir / "results").string(),
                    dir) == 0);
    auto lines = read_lines(dir / "results" / "ablation" / "a" / "results.csv");
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "excluded,mean_error,se_error");
    CHECK(lines[1].rfind("none,", 0) == 0);
    CHECK(lines[2].rfind("pso,", 0) == 0);
    CHECK(lines[3].rfind("de,", 0) == 0);
    CHECK(lines[4].rfind("fp,", 0) == 0);
}

TEST_CASE("cross-dim: one row per dimension") {
    fs::path dir = case_dir("cross-dim");
    REQUIRE(run_cli("cross-dim --benchmark zakharov --dims 2,3 --generations 10,12 "
                    "--roster pso,batlevy --agents 5 --trials 2 --name a --out " +
                        (dir / "results").string(),
                    dir) == 0);
    auto lines = read_lines(dir / "results" / "cross-dim" / "a" / "results.csv");
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "dimension,generations,batlevy_mean,batlevy_se,mmo_mean,mmo_se");
    CHECK(lines[1].rfind("2,10,", 0) == 0);
    CHECK(lines[2].rfind("3,12,", 0) == 0);
    CHECK(field_count(lines[1]) == 6);
}

TEST_CASE("svm: summary rows and trajectory files") {
    fs::path dir = case_dir("svm");
    fs::path raw = dir / "bcw.data";
    mmo::synthetic::write_bcw_raw(raw.string(), 555);

    REQUIRE(run_cli("svm --data " + raw.string() +
                        " --format bcw --trainer both --lambdas 0 --alphas 0.01 "
                        "--schemes best --frequencies 2 --iterations 5 --seeds 2 "
                        "--roster pso,de --agents 5 --name a --out " +
                        (dir / "results").string(),
                    dir) == 0);

    fs::path run = dir / "results" / "svm" / "a";
    auto lines = read_lines(run / "results.csv");
    REQUIRE(lines.size() == 3);  // header + 1 sgd config + 1 mmo config
    CHECK(lines[0] == "dataset,trainer,config,loss,train_acc,valid_acc,test_acc");
    CHECK(lines[1].rfind("bcw,sgd,lambda=0 alpha=0.01,", 0) == 0);
    CHECK(lines[2].rfind("bcw,mmo,lambda=0 f=2 scheme=best,", 0) == 0);
    CHECK(field_count(lines[1]) == 7);

    for (const char* stem : {"sgd-l0-a0p01-s0", "sgd-l0-a0p01-s1", "mmo-l0-f2-best-s0",
                             "mmo-l0-f2-best-s1"}) {
        fs::path traj = run / "trajectories" / (std::string(stem) + ".csv");
        CAPTURE(stem);
        REQUIRE(fs::exists(traj));
        auto rows = read_lines(traj);
        CHECK(rows.size() == 7);  // header + iterations 0..5
        CHECK(rows[0] == "iteration,loss");
        CHECK(rows[1].rfind("0,", 0) == 0);
    }
}

TEST_CASE("optimize: benchmark mode writes reproducible best.json") {
    fs::path dir = case_dir("optimize-bench");
    std::string common = "optimize --benchmark zakharov --dim 2 --roster pso,de --scheme best "
                         "--frequency 2 --generations 20 --agents 5 --seed 11 --out " +
                         (dir / "results").string();
    REQUIRE(run_cli(common + " --name a", dir) == 0);
    std::string stdout_a = read_file(dir / "stdout.txt");
    CHECK(stdout_a.find("\"best_fitness\"") != std::string::npos);
    CHECK(stdout_a.find("\"wall_time_seconds\"") != std::string::npos);

    fs::path best_a = dir / "results" / "optimize" / "a" / "best.json";
    REQUIRE(fs::exists(best_a));
    std::string doc = read_file(best_a);
    CHECK(doc.find("\"best_position\"") != std::string::npos);
    CHECK(doc.find("\"evaluations\"") != std::string::npos);
    CHECK(doc.find("wall_time_seconds") == std::string::npos);  // on-disk copy is seed-stable

    REQUIRE(run_cli(common + " --name b", dir) == 0);
    CHECK(doc == read_file(dir / "results" / "optimize" / "b" / "best.json"));
}

TEST_CASE("optimize: external evaluator over the line protocol") {
    fs::path dir = case_dir("optimize-eval");
    fs::path script = dir / "sphere.sh";
    {
        std::ofstream out(script);
        out << "#!/bin/sh\n"
               "while read -r line; do\n"
               "  awk -v l=\"$line\" 'BEGIN { n = split(l, a, \" \"); s = 0;\n"
               "    for (i = 1; i <= n; i++) s += a[i] * a[i]; printf \"%.17g\\n\", s }'\n"
               "done\n";
    }

    REQUIRE(run_cli("optimize --evaluator \"sh " + script.string() +
                        "\" --dim 2 --lower -3 --upper 3 --roster pso,de --scheme best "
                        "--frequency 2 --generations 10 --agents 4 --seed 1 --name a --out " +
                        (dir / "results").string(),
                    dir) == 0);
    std::string doc = read_file(dir / "results" / "optimize" / "a" / "best.json");
    std::size_t at = doc.find("\"best_fitness\":");
    REQUIRE(at != std::string::npos);
    double fitness = std::stod(doc.substr(at + 15));
    CHECK(fitness >= 0.0);
    CHECK(fitness < 1.0);  // pso+de handle a 2D sphere easily
}

TEST_CASE("optimize: evaluator that dies is a runtime failure, not a crash") {
    fs::path dir = case_dir("optimize-dead");
    CHECK(run_cli("optimize --evaluator false --dim 2 --generations 5 --agents 4 --out " +
                      (dir / "results").string(),
                  dir) == 3);
    CHECK(run_cli("optimize --evaluator true --dim 2 --generations 5 --agents 4 --out " +
                      (dir / "results").string(),
                  dir) == 3);  // exits without producing output
}

TEST_CASE("exit codes distinguish usage errors from runtime errors") {
    fs::path dir = case_dir("exit-codes");
    std::string out = " --out " + (dir / "results").string();
    CHECK(run_cli("--help", dir) == 0);
    CHECK(run_cli("bench-single --help", dir) == 0);
    CHECK(run_cli("no-such-subcommand", dir) == 2);
    CHECK(run_cli("", dir) == 2);  // a subcommand is required
    CHECK(run_cli("bench-single --benchmark zakharov --dim 2 --optimizers nope --agents 4 "
                  "--generations 5 --trials 1" + out, dir) == 2);
    CHECK(run_cli("bench-single --benchmark no-such-fn --dim 2 --agents 4 --generations 5 "
                  "--trials 1" + out, dir) == 2);
    CHECK(run_cli("svm --trainer both" + out, dir) == 2);                   // missing --data
    CHECK(run_cli("svm --data /nonexistent.data --format bcw" + out, dir) == 3);
    CHECK(run_cli("optimize --benchmark zakharov --evaluator true --dim 2" + out, dir) == 2);
    CHECK(run_cli("optimize --evaluator true" + out, dir) == 2);            // missing --dim
    CHECK(run_cli("bench-mmo --benchmark zakharov --dim 2 --schemes no-such-scheme "
                  "--frequencies 1 --agents 4 --generations 5 --trials 1" + out, dir) == 2);
}

TEST_CASE("config file values are read and overridden by flags") {
    fs::path dir = case_dir("config-file");
    fs::path cfg = dir / "run.cfg";
    {
        std::ofstream out(cfg);
        out << "# tiny sweep\n"
               "benchmark=zakharov\n"
               "dim=2\n"
               "optimizers=pso,de\n"
               "agents=5\n"
               "generations=10\n"
               "trials=2\n"
               "seed=9\n";
    }
    std::string out_root = (dir / "results").string();

    REQUIRE(run_cli("bench-single --config " + cfg.string() + " --name from-config --out " +
                        out_root, dir) == 0);
    REQUIRE(run_cli("bench-single --benchmark zakharov --dim 2 --optimizers pso,de --agents 5 "
                    "--generations 10 --trials 2 --seed 9 --name from-flags --out " +
                        out_root, dir) == 0);
    CHECK(read_file(dir / "results" / "bench-single" / "from-config" / "results.csv") ==
          read_file(dir / "results" / "bench-single" / "from-flags" / "results.csv"));

    // a flag beats the same key in the config file
    REQUIRE(run_cli("bench-single --config " + cfg.string() +
                        " --seed 10 --name override --out " + out_root, dir) == 0);
    REQUIRE(run_cli("bench-single --benchmark zakharov --dim 2 --optimizers pso,de --agents 5 "
                    "--generations 10 --trials 2 --seed 10 --name flags10 --out " +
                        out_root, dir) == 0);
    CHECK(read_file(dir / "results" / "bench-single" / "override" / "results.csv") ==
          read_file(dir / "results" / "bench-single" / "flags10" / "results.csv"));
    CHECK(read_file(dir / "results" / "bench-single" / "override" / "results.csv") !=
          read_file(dir / "results" / "bench-single" / "from-config" / "results.csv"));
}

}  // TEST_SUITE
