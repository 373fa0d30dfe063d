#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mmo/mmo.hpp"

namespace mmo::svm {

struct Dataset {
    std::vector<std::vector<double>> rows;   // N x d
    std::vector<int> labels;                 // class indices 0..classes-1
    int classes = 2;

    std::size_t size() const { return rows.size(); }
    int dim() const { return rows.empty() ? 0 : static_cast<int>(rows.front().size()); }
};

struct Normalizer {
    std::vector<double> mean, stddev;        // stddev 0 is stored as 1
    std::vector<double> apply(const std::vector<double>& row) const;
};

struct DataSplit {
    Dataset train, valid, test;              // already normalized
    Normalizer normalizer;                   // fitted on the training rows
};

// Flat parameter layout: binary models hold [w(d), b]; multi-class models hold
// one [W_c(d), b_c] block per class, concatenated in class order.
struct LinearModel {
    int classes = 2;
    int dim = 0;
    std::vector<double> params;

    static LinearModel zeros(int classes, int dim);
    static LinearModel from_params(int classes, int dim, std::vector<double> params);

    double weight(int c, int j) const;
    double bias(int c) const;
    double& weight(int c, int j);
    double& bias(int c);

    // w.x + b for the binary model; per-class scores for multi-class.
    double score(const std::vector<double>& row) const;
    std::vector<double> scores(const std::vector<double>& row) const;
    int predict(const std::vector<double>& row) const;

    std::size_t param_count() const { return params.size(); }
};

// BCW: 11 columns (id, 9 integer attributes, class 2/4); rows containing '?'
// are dropped.  IS: leading header lines, then `CLASSNAME,19 floats` rows with
// the 7 class names mapped alphabetically (case-insensitive).
Dataset load_dataset(const std::string& path, const std::string& format);

const std::vector<std::string>& is_class_names();

// Shuffle by seed, split 60/20/20 (floor train, floor valid, remainder test),
// then standardize every split with statistics fitted on the training rows.
DataSplit split_dataset(const Dataset& data, std::uint64_t seed);

double svm_loss(const LinearModel& model, const Dataset& data, double lambda);
double accuracy(const LinearModel& model, const Dataset& data);

// Full-batch analytic subgradient of svm_loss (mean hinge terms plus the
// regularizer), in the flat parameter layout.
std::vector<double> svm_subgradient(const LinearModel& model, const Dataset& data, double lambda);

struct SvmHyperparams {
    double lambda = 0.0;
    double alpha = 0.01;
    int iterations = 1000;                   // epochs over the training rows
};

struct TrainResult {
    LinearModel model;
    std::vector<std::pair<int, double>> trajectory;  // (iteration, training loss), iterations+1 rows
};

TrainResult sgd_train(const DataSplit& split, const SvmHyperparams& hp, std::uint64_t seed);

// Flattens the model into a run_mmo search over [-10, 10]^P with the training
// loss as objective; mmo_config.generations plays the iteration budget.
TrainResult mmo_train(const DataSplit& split, double lambda, const MmoConfig& mmo_config);

}  // namespace mmo::svm
