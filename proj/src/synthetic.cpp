#include "mmo/synthetic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "mmo/core.hpp"

namespace mmo::synthetic {

namespace {

// BCW stand-in: two overlapping integer-valued blobs over eight attributes,
// plus one rare-marker attribute shaped like the real data's Mitoses column
// (almost always 1, occasionally 10, more often for malignant rows).  The
// separation is tuned so a linear model tops out near the high 80s, matching
// the accuracy regime the real data produces; the rare-marker rows are the
// high-|z| tail that keeps per-row SGD's last iterate noticeably off the
// full-batch optimum.
constexpr int kBcwRows = 683;
constexpr int kBcwDim = 9;
constexpr int kBcwBlobDims = 8;
constexpr double kBcwBenignFrac = 0.65;
constexpr double kBcwSep = 0.70;
constexpr double kBcwSigma = 2.2;
constexpr double kBcwMarkerPBenign = 0.03;
constexpr double kBcwMarkerPMalignant = 0.08;

// IS stand-in: 7 Gaussian classes, each with a satellite cluster sitting past
// the next class's centroid.  The satellites drag the regularized per-row SGD
// solution off the good separating direction, which is what creates the
// SGD-vs-full-batch accuracy gap this dataset exists to exhibit.
constexpr int kIsPerClass = 330;
constexpr int kIsDim = 19;
constexpr int kIsClasses = 7;
constexpr double kIsMuScale = 2.0;
constexpr double kIsMainSigma = 0.8;
constexpr double kIsSatFrac = 0.28;
constexpr double kIsSatOffset = 3.0;
constexpr double kIsSatSigma = 0.5;

void shuffle_dataset(svm::Dataset& data, RngStream& rng) {
    for (std::size_t i = data.rows.size() - 1; i > 0; --i) {
        std::size_t j = rng.uniform_index(i + 1);
        std::swap(data.rows[i], data.rows[j]);
        std::swap(data.labels[i], data.labels[j]);
    }
}

}  // namespace

svm::Dataset make_bcw(std::uint64_t seed) {
    RngStream rng(seed);
    const int n0 = static_cast<int>(std::lround(kBcwRows * kBcwBenignFrac));
    const int n1 = kBcwRows - n0;

    std::vector<double> dirs(kBcwBlobDims);
    for (double& d : dirs) d = rng.uniform(0.6, 1.4);

    svm::Dataset data;
    data.classes = 2;
    data.rows.reserve(kBcwRows);
    data.labels.reserve(kBcwRows);
    auto emit = [&](int count, double mu_mult, double sigma_mult, int label) {
        const double p_marker = label == 1 ? kBcwMarkerPMalignant : kBcwMarkerPBenign;
        for (int i = 0; i < count; ++i) {
            std::vector<double> row(kBcwDim);
            for (int j = 0; j < kBcwBlobDims; ++j) {
                double mu = 3.0 + mu_mult * dirs[j] * kBcwSep;
                double x = std::nearbyint(mu + sigma_mult * kBcwSigma * rng.gaussian());
                row[j] = std::clamp(x, 1.0, 10.0);
            }
            for (int j = kBcwBlobDims; j < kBcwDim; ++j)
                row[j] = rng.uniform() < p_marker ? 10.0 : 1.0;
            data.rows.push_back(std::move(row));
            data.labels.push_back(label);
        }
    };
    emit(n0, -0.5, 1.0, 0);
    emit(n1, 2.2, 1.5, 1);
    shuffle_dataset(data, rng);
    return data;
}

svm::Dataset make_is(std::uint64_t seed) {
    RngStream rng(seed);

    std::vector<std::vector<double>> mu(kIsClasses, std::vector<double>(kIsDim));
    for (auto& row : mu)
        for (double& v : row) v = kIsMuScale * rng.gaussian();

    std::vector<std::vector<double>> unit(kIsClasses, std::vector<double>(kIsDim));
    for (auto& row : unit) {
        double norm = 0.0;
        for (double& v : row) {
            v = rng.gaussian();
            norm += v * v;
        }
        norm = std::sqrt(norm);
        for (double& v : row) v /= norm;
    }

    svm::Dataset data;
    data.classes = kIsClasses;
    data.rows.reserve(static_cast<std::size_t>(kIsPerClass) * kIsClasses);
    data.labels.reserve(data.rows.capacity());
    const int n_sat = static_cast<int>(std::lround(kIsPerClass * kIsSatFrac));
    const int n_main = kIsPerClass - n_sat;
    for (int c = 0; c < kIsClasses; ++c) {
        for (int i = 0; i < n_main; ++i) {
            std::vector<double> row(kIsDim);
            for (int j = 0; j < kIsDim; ++j) row[j] = mu[c][j] + kIsMainSigma * rng.gaussian();
            data.rows.push_back(std::move(row));
            data.labels.push_back(c);
        }
        const auto& next_mu = mu[(c + 1) % kIsClasses];
        for (int i = 0; i < n_sat; ++i) {
            std::vector<double> row(kIsDim);
            for (int j = 0; j < kIsDim; ++j)
                row[j] = next_mu[j] + kIsSatOffset * unit[c][j] + kIsSatSigma * rng.gaussian();
            data.rows.push_back(std::move(row));
            data.labels.push_back(c);
        }
    }
    shuffle_dataset(data, rng);
    return data;
}

void write_bcw_raw(const std::string& path, std::uint64_t seed) {
    svm::Dataset clean = make_bcw(seed);
    RngStream junk_rng(derive_seed(seed, 99));

    // 16 missing-value rows, spread through the file; loaders must drop them
    // to recover the 683 clean rows.
    std::vector<std::string> lines;
    lines.reserve(clean.size() + 16);
    for (std::size_t i = 0; i < clean.size(); ++i) {
        std::string line = std::to_string(1000000 + 7 * (i + 1));
        for (int j = 0; j < clean.dim(); ++j)
            line += "," + std::to_string(static_cast<int>(clean.rows[i][j]));
        line += clean.labels[i] == 1 ? ",4" : ",2";
        lines.push_back(std::move(line));
    }
    for (int k = 0; k < 16; ++k) {
        std::string line = std::to_string(2000000 + 13 * (k + 1));
        for (int j = 0; j < kBcwDim; ++j) {
            if (j == 5) {
                line += ",?";  // Bare Nuclei column
            } else {
                int v = 1 + static_cast<int>(junk_rng.uniform_index(10));
                line += "," + std::to_string(v);
            }
        }
        line += junk_rng.uniform() < 0.5 ? ",2" : ",4";
        std::size_t pos = std::min<std::size_t>(static_cast<std::size_t>(41) * (k + 1), lines.size());
        lines.insert(lines.begin() + pos, std::move(line));
    }

    std::ofstream out(path);
    if (!out) throw std::runtime_error("synthetic: cannot write '" + path + "'");
    for (const auto& line : lines) out << line << '\n';
}

void write_is_raw(const std::string& path, std::uint64_t seed) {
    svm::Dataset data = make_is(seed);

    std::ofstream out(path);
    if (!out) throw std::runtime_error("synthetic: cannot write '" + path + "'");
    out << "IMAGE SEGMENTATION DATA\n";
    std::string names;
    for (const auto& n : svm::is_class_names()) {
        std::string up = n;
        for (char& ch : up) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        names += (names.empty() ? "" : ",") + up;
    }
    out << names << "\n\n";

    char buf[64];
    for (std::size_t i = 0; i < data.size(); ++i) {
        std::string up = svm::is_class_names()[data.labels[i]];
        for (char& ch : up) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        out << up;
        for (int j = 0; j < data.dim(); ++j) {
            std::snprintf(buf, sizeof(buf), ",%.5f", data.rows[i][j]);
            out << buf;
        }
        out << '\n';
    }
}

}  // namespace mmo::synthetic
