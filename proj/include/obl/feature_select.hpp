#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "obl/core.hpp"

namespace obl {

struct MiConfig {
    std::size_t n_bins = 10;  // equal-width bins
};

struct SelectionResult {
    std::vector<std::size_t> selected;  // ordered by descending MI, ties by lower index
    std::vector<double> scores;         // MI per original feature, in nats
};

// Histogram MI between an equal-width-binned feature and the class label.
inline double mutual_information(const std::vector<double>& feature, const LabelVector& labels,
                                 const MiConfig& cfg = {}) {
    if (feature.size() != labels.size())
        throw LengthMismatch("mutual_information: feature/label length mismatch");
    const std::size_t n = feature.size();
    const std::size_t n_bins = cfg.n_bins;
    const std::size_t n_classes = static_cast<std::size_t>(labels.n_classes());

    double lo = feature[0], hi = feature[0];
    for (double v : feature) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double width = hi - lo;

    std::vector<std::size_t> joint(n_bins * n_classes, 0);
    std::vector<std::size_t> bin_count(n_bins, 0);
    std::vector<std::size_t> class_count(n_classes, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t b = 0;
        if (width > 0.0) {
            b = static_cast<std::size_t>((feature[i] - lo) / width * static_cast<double>(n_bins));
            if (b >= n_bins) b = n_bins - 1;
        }
        std::size_t c = static_cast<std::size_t>(labels.labels[i]);
        ++joint[b * n_classes + c];
        ++bin_count[b];
        ++class_count[c];
    }

    double mi = 0.0;
    const double dn = static_cast<double>(n);
    for (std::size_t b = 0; b < n_bins; ++b)
        for (std::size_t c = 0; c < n_classes; ++c) {
            std::size_t nbc = joint[b * n_classes + c];
            if (nbc == 0) continue;
            double pbc = static_cast<double>(nbc) / dn;
            double pb = static_cast<double>(bin_count[b]) / dn;
            double pc = static_cast<double>(class_count[c]) / dn;
            mi += pbc * std::log(pbc / (pb * pc));
        }
    return mi;
}

inline SelectionResult select_top_k(const FeatureMatrix& x, const LabelVector& labels,
                                    std::size_t k, const MiConfig& cfg = {}) {
    if (k < 1 || k > x.cols())
        throw KOutOfRange("select_top_k: k outside 1..n_features");
    SelectionResult res;
    res.scores.resize(x.cols());
    for (std::size_t j = 0; j < x.cols(); ++j)
        res.scores[j] = mutual_information(x.column(j), labels, cfg);

    std::vector<std::size_t> order(x.cols());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return res.scores[a] > res.scores[b];
    });
    res.selected.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    return res;
}

inline FeatureMatrix project(const FeatureMatrix& x, const SelectionResult& sel) {
    for (std::size_t j : sel.selected)
        if (j >= x.cols()) throw IndexOutOfRange("project: selected index out of range");
    FeatureMatrix out(x.rows(), sel.selected.size());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < sel.selected.size(); ++j)
            out(i, j) = x(i, sel.selected[j]);
    return out;
}

}  // namespace obl
