#include "mmo/svm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mmo::svm {

namespace {

std::string lower(std::string s) {
    for (char& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return s;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(trim(field));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    try {
        std::size_t used = 0;
        out = std::stod(s, &used);
        return used == s.size();
    } catch (const std::exception&) {
        return false;
    }
}

[[noreturn]] void parse_fail(const std::string& path, std::size_t line_no, const std::string& what) {
    throw std::runtime_error("svm: " + path + ":" + std::to_string(line_no) + ": " + what);
}

Dataset load_bcw(const std::string& path, std::ifstream& in) {
    Dataset data;
    data.classes = 2;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;
        auto fields = split_fields(line);
        if (fields.size() != 11)
            parse_fail(path, line_no, "expected 11 comma-separated columns, got " +
                                          std::to_string(fields.size()));
        if (std::any_of(fields.begin(), fields.end(),
                        [](const std::string& f) { return f == "?"; }))
            continue;  // missing-value row, dropped (not imputed)
        std::vector<double> row(9);
        for (int j = 0; j < 9; ++j)
            if (!parse_double(fields[j + 1], row[j]))
                parse_fail(path, line_no, "malformed attribute '" + fields[j + 1] + "'");
        if (fields[10] == "2")
            data.labels.push_back(0);
        else if (fields[10] == "4")
            data.labels.push_back(1);
        else
            parse_fail(path, line_no, "unknown label '" + fields[10] + "' (expected 2 or 4)");
        data.rows.push_back(std::move(row));
    }
    if (data.rows.empty()) throw std::runtime_error("svm: " + path + ": no data rows");
    return data;
}

int is_class_index(const std::string& name) {
    const auto& names = is_class_names();
    std::string key = lower(name);
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == key) return static_cast<int>(i);
    return -1;
}

Dataset load_is(const std::string& path, std::ifstream& in) {
    Dataset data;
    data.classes = 7;
    std::string line;
    std::size_t line_no = 0;
    bool seen_data = false;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;
        auto fields = split_fields(line);
        int cls = fields.empty() ? -1 : is_class_index(fields[0]);
        if (cls < 0) {
            if (!seen_data) continue;  // header line
            parse_fail(path, line_no, "unknown class name '" + (fields.empty() ? "" : fields[0]) + "'");
        }
        if (fields.size() != 20) {
            if (!seen_data) continue;
            parse_fail(path, line_no, "expected class name plus 19 attributes, got " +
                                          std::to_string(fields.size()) + " fields");
        }
        std::vector<double> row(19);
        bool ok = true;
        for (int j = 0; j < 19 && ok; ++j) ok = parse_double(fields[j + 1], row[j]);
        if (!ok) {
            if (!seen_data) continue;
            parse_fail(path, line_no, "malformed attribute row");
        }
        seen_data = true;
        data.labels.push_back(cls);
        data.rows.push_back(std::move(row));
    }
    if (data.rows.empty()) throw std::runtime_error("svm: " + path + ": no data rows");
    return data;
}

void check_model_data(const LinearModel& model, const Dataset& data) {
    if (data.rows.empty()) throw std::invalid_argument("svm: empty dataset");
    if (model.dim != data.dim())
        throw std::invalid_argument("svm: model dimension " + std::to_string(model.dim) +
                                    " does not match data dimension " + std::to_string(data.dim()));
    if (model.classes != data.classes)
        throw std::invalid_argument("svm: model classes " + std::to_string(model.classes) +
                                    " does not match data classes " + std::to_string(data.classes));
}

// Adds this row's hinge subgradient (without the regularizer) into grad.
void add_row_subgradient(const LinearModel& model, const std::vector<double>& row, int label,
                         std::vector<double>& grad) {
    const int d = model.dim;
    if (model.classes == 2) {
        double y = label == 1 ? 1.0 : -1.0;
        if (1.0 - y * model.score(row) > 0.0) {
            for (int j = 0; j < d; ++j) grad[j] -= y * row[j];
            grad[d] -= y;
        }
        return;
    }
    std::vector<double> s = model.scores(row);
    int active = 0;
    for (int c = 0; c < model.classes; ++c) {
        if (c == label) continue;
        if (1.0 - (s[label] - s[c]) > 0.0) {
            ++active;
            double* block = grad.data() + static_cast<std::size_t>(c) * (d + 1);
            for (int j = 0; j < d; ++j) block[j] += row[j];
            block[d] += 1.0;
        }
    }
    if (active > 0) {
        double* block = grad.data() + static_cast<std::size_t>(label) * (d + 1);
        for (int j = 0; j < d; ++j) block[j] -= active * row[j];
        block[d] -= static_cast<double>(active);
    }
}

void add_regularizer_gradient(const LinearModel& model, double lambda, std::vector<double>& grad) {
    if (lambda == 0.0) return;
    const int d = model.dim;
    const int blocks = model.classes == 2 ? 1 : model.classes;
    for (int c = 0; c < blocks; ++c)
        for (int j = 0; j < d; ++j) {
            std::size_t idx = static_cast<std::size_t>(c) * (d + 1) + j;
            grad[idx] += 2.0 * lambda * model.params[idx];
        }
}

}  // namespace

std::vector<double> Normalizer::apply(const std::vector<double>& row) const {
    if (row.size() != mean.size()) throw std::invalid_argument("svm: normalizer dimension mismatch");
    std::vector<double> out(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) out[j] = (row[j] - mean[j]) / stddev[j];
    return out;
}

LinearModel LinearModel::zeros(int classes, int dim) {
    if (classes < 2 || dim < 1) throw std::invalid_argument("svm: bad model shape");
    LinearModel m;
    m.classes = classes;
    m.dim = dim;
    m.params.assign(classes == 2 ? dim + 1 : static_cast<std::size_t>(classes) * (dim + 1), 0.0);
    return m;
}

LinearModel LinearModel::from_params(int classes, int dim, std::vector<double> params) {
    LinearModel m = zeros(classes, dim);
    if (params.size() != m.params.size())
        throw std::invalid_argument("svm: parameter vector has wrong length");
    m.params = std::move(params);
    return m;
}

double LinearModel::weight(int c, int j) const {
    return params[static_cast<std::size_t>(c) * (dim + 1) + j];
}
double LinearModel::bias(int c) const {
    return params[static_cast<std::size_t>(c) * (dim + 1) + dim];
}
double& LinearModel::weight(int c, int j) {
    return params[static_cast<std::size_t>(c) * (dim + 1) + j];
}
double& LinearModel::bias(int c) {
    return params[static_cast<std::size_t>(c) * (dim + 1) + dim];
}

double LinearModel::score(const std::vector<double>& row) const {
    double s = bias(0);
    for (int j = 0; j < dim; ++j) s += params[j] * row[j];
    return s;
}

std::vector<double> LinearModel::scores(const std::vector<double>& row) const {
    std::vector<double> s(classes);
    for (int c = 0; c < classes; ++c) {
        double v = bias(c);
        for (int j = 0; j < dim; ++j) v += weight(c, j) * row[j];
        s[c] = v;
    }
    return s;
}

int LinearModel::predict(const std::vector<double>& row) const {
    if (classes == 2) return score(row) > 0.0 ? 1 : 0;
    std::vector<double> s = scores(row);
    return static_cast<int>(std::max_element(s.begin(), s.end()) - s.begin());
}

Dataset load_dataset(const std::string& path, const std::string& format) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("svm: cannot open '" + path + "'");
    if (format == "bcw") return load_bcw(path, in);
    if (format == "image_segmentation") return load_is(path, in);
    throw std::invalid_argument("svm: unknown dataset format '" + format + "'");
}

const std::vector<std::string>& is_class_names() {
    static const std::vector<std::string> names = {"brickface", "cement", "foliage",
                                                   "grass",     "path",   "sky",   "window"};
    return names;
}

DataSplit split_dataset(const Dataset& data, std::uint64_t seed) {
    const std::size_t n = data.size();
    if (n < 5) throw std::invalid_argument("svm: need at least 5 rows to split");
    if (data.labels.size() != n) throw std::invalid_argument("svm: labels/rows length mismatch");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    RngStream rng(seed);
    for (std::size_t i = n - 1; i > 0; --i)
        std::swap(order[i], order[rng.uniform_index(i + 1)]);

    const std::size_t n_train = n * 60 / 100;
    const std::size_t n_valid = n * 20 / 100;
    const int d = data.dim();

    DataSplit split;
    split.normalizer.mean.assign(d, 0.0);
    split.normalizer.stddev.assign(d, 0.0);
    for (std::size_t i = 0; i < n_train; ++i)
        for (int j = 0; j < d; ++j) split.normalizer.mean[j] += data.rows[order[i]][j];
    for (int j = 0; j < d; ++j) split.normalizer.mean[j] /= static_cast<double>(n_train);
    for (std::size_t i = 0; i < n_train; ++i)
        for (int j = 0; j < d; ++j) {
            double dev = data.rows[order[i]][j] - split.normalizer.mean[j];
            split.normalizer.stddev[j] += dev * dev;
        }
    for (int j = 0; j < d; ++j) {
        split.normalizer.stddev[j] = std::sqrt(split.normalizer.stddev[j] / static_cast<double>(n_train));
        if (split.normalizer.stddev[j] == 0.0) split.normalizer.stddev[j] = 1.0;
    }

    auto emit = [&](std::size_t from, std::size_t to, Dataset& out) {
        out.classes = data.classes;
        out.rows.reserve(to - from);
        out.labels.reserve(to - from);
        for (std::size_t i = from; i < to; ++i) {
            out.rows.push_back(split.normalizer.apply(data.rows[order[i]]));
            out.labels.push_back(data.labels[order[i]]);
        }
    };
    emit(0, n_train, split.train);
    emit(n_train, n_train + n_valid, split.valid);
    emit(n_train + n_valid, n, split.test);
    return split;
}

double svm_loss(const LinearModel& model, const Dataset& data, double lambda) {
    check_model_data(model, data);
    double total = 0.0;
    if (model.classes == 2) {
        for (std::size_t i = 0; i < data.size(); ++i) {
            double y = data.labels[i] == 1 ? 1.0 : -1.0;
            total += std::max(0.0, 1.0 - y * model.score(data.rows[i]));
        }
    } else {
        for (std::size_t i = 0; i < data.size(); ++i) {
            std::vector<double> s = model.scores(data.rows[i]);
            int y = data.labels[i];
            for (int c = 0; c < model.classes; ++c)
                if (c != y) total += std::max(0.0, 1.0 - (s[y] - s[c]));
        }
    }
    total /= static_cast<double>(data.size());

    double reg = 0.0;
    const int blocks = model.classes == 2 ? 1 : model.classes;
    for (int c = 0; c < blocks; ++c)
        for (int j = 0; j < model.dim; ++j) reg += model.weight(c, j) * model.weight(c, j);
    return total + lambda * reg;
}

double accuracy(const LinearModel& model, const Dataset& data) {
    check_model_data(model, data);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < data.size(); ++i)
        if (model.predict(data.rows[i]) == data.labels[i]) ++hits;
    return 100.0 * static_cast<double>(hits) / static_cast<double>(data.size());
}

std::vector<double> svm_subgradient(const LinearModel& model, const Dataset& data, double lambda) {
    check_model_data(model, data);
    std::vector<double> grad(model.param_count(), 0.0);
    for (std::size_t i = 0; i < data.size(); ++i)
        add_row_subgradient(model, data.rows[i], data.labels[i], grad);
    for (double& g : grad) g /= static_cast<double>(data.size());
    add_regularizer_gradient(model, lambda, grad);
    return grad;
}

TrainResult sgd_train(const DataSplit& split, const SvmHyperparams& hp, std::uint64_t seed) {
    const Dataset& train = split.train;
    if (train.rows.empty()) throw std::invalid_argument("svm: empty training split");
    if (hp.iterations < 0) throw std::invalid_argument("svm: iterations must be >= 0");

    TrainResult result;
    result.model = LinearModel::zeros(train.classes, train.dim());
    result.trajectory.reserve(hp.iterations + 1);
    result.trajectory.emplace_back(0, svm_loss(result.model, train, hp.lambda));

    RngStream rng(seed);
    std::vector<std::size_t> order(train.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> grad(result.model.param_count());

    for (int it = 1; it <= hp.iterations; ++it) {
        for (std::size_t i = order.size() - 1; i > 0; --i)
            std::swap(order[i], order[rng.uniform_index(i + 1)]);
        for (std::size_t i : order) {
            std::fill(grad.begin(), grad.end(), 0.0);
            add_row_subgradient(result.model, train.rows[i], train.labels[i], grad);
            add_regularizer_gradient(result.model, hp.lambda, grad);
            for (std::size_t p = 0; p < grad.size(); ++p)
                result.model.params[p] -= hp.alpha * grad[p];
        }
        result.trajectory.emplace_back(it, svm_loss(result.model, train, hp.lambda));
    }
    return result;
}

TrainResult mmo_train(const DataSplit& split, double lambda, const MmoConfig& mmo_config) {
    const Dataset& train = split.train;
    if (train.rows.empty()) throw std::invalid_argument("svm: empty training split");
    const int classes = train.classes;
    const int d = train.dim();
    const std::size_t p = LinearModel::zeros(classes, d).param_count();

    Objective obj("svm_loss", Bounds(p, -10.0, 10.0), [&train, classes, d, lambda](const SolutionVector& v) {
        return svm_loss(LinearModel::from_params(classes, d, v), train, lambda);
    });

    MmoResult run = run_mmo(mmo_config, obj);

    TrainResult result;
    result.model = LinearModel::from_params(classes, d, run.best.position);
    result.trajectory = std::move(run.trajectory);
    return result;
}

}  // namespace mmo::svm
