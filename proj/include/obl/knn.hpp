#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "obl/core.hpp"

namespace obl {

// Lazy learner: stores the training data verbatim.
struct KnnModel {
    FeatureMatrix train_x;
    LabelVector train_y;
    std::size_t k = 3;
    bool weighted = false;
};

inline KnnModel knn_fit(const LabeledDataset& train, std::size_t k, bool weighted) {
    if (k < 1 || k > train.features.rows())
        throw KTooLarge("knn_fit: k outside 1..n_samples");
    if (train.labels.size() != train.features.rows())
        throw LengthMismatch("knn_fit: labels/rows mismatch");
    return KnnModel{train.features, train.labels, k, weighted};
}

// Neighbor ties at the k-th distance break by lower row index. Unweighted
// class-vote ties break by smaller summed neighbor distance, then lower
// class id. Weighted voting uses 1/(d+eps); any zero-distance neighbor
// switches to a majority vote among the zero-distance neighbors only.
inline int knn_predict_one(const KnnModel& m, const std::vector<double>& q) {
    const FeatureMatrix& x = m.train_x;
    if (q.size() != x.cols())
        throw DimensionMismatch("knn_predict_one: query dimension differs");

    std::vector<std::pair<double, std::size_t>> order(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        double d2 = 0.0;
        const double* row = x.row_ptr(i);
        for (std::size_t j = 0; j < x.cols(); ++j) {
            double d = q[j] - row[j];
            d2 += d * d;
        }
        order[i] = {std::sqrt(d2), i};
    }
    std::partial_sort(order.begin(),
                      order.begin() + static_cast<std::ptrdiff_t>(m.k), order.end());

    const std::size_t n_classes = static_cast<std::size_t>(m.train_y.n_classes());
    std::vector<std::size_t> votes(n_classes, 0);
    std::vector<double> dist_sum(n_classes, 0.0);
    std::vector<double> weight(n_classes, 0.0);
    std::vector<std::size_t> zero_votes(n_classes, 0);
    bool any_zero = false;
    constexpr double eps = 1e-10;

    for (std::size_t t = 0; t < m.k; ++t) {
        double d = order[t].first;
        auto c = static_cast<std::size_t>(m.train_y.labels[order[t].second]);
        ++votes[c];
        dist_sum[c] += d;
        weight[c] += 1.0 / (d + eps);
        if (d == 0.0) {
            any_zero = true;
            ++zero_votes[c];
        }
    }

    if (m.weighted) {
        if (any_zero) {
            std::size_t best = 0;
            for (std::size_t c = 1; c < n_classes; ++c)
                if (zero_votes[c] > zero_votes[best]) best = c;
            return static_cast<int>(best);
        }
        std::size_t best = 0;
        for (std::size_t c = 1; c < n_classes; ++c)
            if (weight[c] > weight[best]) best = c;
        return static_cast<int>(best);
    }

    std::size_t best = 0;
    for (std::size_t c = 1; c < n_classes; ++c) {
        if (votes[c] > votes[best] ||
            (votes[c] == votes[best] && dist_sum[c] < dist_sum[best]))
            best = c;
    }
    return static_cast<int>(best);
}

inline LabelVector knn_predict(const KnnModel& m, const FeatureMatrix& x) {
    if (x.rows() > 0 && x.cols() != m.train_x.cols())
        throw DimensionMismatch("knn_predict: column count differs");
    LabelVector out;
    out.class_names = m.train_y.class_names;
    out.labels.reserve(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i)
        out.labels.push_back(knn_predict_one(m, x.row(i)));
    return out;
}

}  // namespace obl
