// Shared test helpers: random dataset generators and independent brute-force
// oracles. Everything here stays independent of the implementation paths it
// checks (only core types are reused).
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "obl/core.hpp"

namespace testsupport {

inline obl::LabelVector make_labels(std::vector<int> ids, int n_classes) {
    obl::LabelVector y;
    y.labels = std::move(ids);
    for (int c = 0; c < n_classes; ++c) y.class_names.push_back("c" + std::to_string(c));
    return y;
}

// Random dataset where every class 0..n_classes-1 occurs at least once.
inline obl::LabeledDataset random_dataset(std::mt19937_64& rng, std::size_t max_n = 100,
                                          std::size_t max_d = 20, int max_c = 5) {
    std::uniform_int_distribution<std::size_t> nd(static_cast<std::size_t>(max_c), max_n);
    std::uniform_int_distribution<std::size_t> dd(1, max_d);
    std::uniform_int_distribution<int> cd(1, max_c);
    std::uniform_real_distribution<double> vd(-10.0, 10.0);
    int n_classes = cd(rng);
    std::size_t n = std::max<std::size_t>(nd(rng), static_cast<std::size_t>(n_classes));
    std::size_t d = dd(rng);
    obl::FeatureMatrix x(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) x(i, j) = vd(rng);
    std::vector<int> ids(n);
    for (std::size_t i = 0; i < n; ++i)
        ids[i] = static_cast<int>(i) < n_classes
                     ? static_cast<int>(i)
                     : std::uniform_int_distribution<int>(0, n_classes - 1)(rng);
    return obl::LabeledDataset{std::move(x), make_labels(std::move(ids), n_classes)};
}

// Exhaustive-scan KNN oracle with the documented tie rules, written against
// plain vectors rather than the library's model type.
inline int knn_oracle(const std::vector<std::vector<double>>& train_x,
                      const std::vector<int>& train_y, int n_classes,
                      const std::vector<double>& q, std::size_t k, bool weighted) {
    struct Entry {
        double dist;
        std::size_t idx;
    };
    std::vector<Entry> all;
    for (std::size_t i = 0; i < train_x.size(); ++i) {
        double d2 = 0.0;
        for (std::size_t j = 0; j < q.size(); ++j) {
            double d = q[j] - train_x[i][j];
            d2 += d * d;
        }
        all.push_back({std::sqrt(d2), i});
    }
    std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) {
        return a.dist != b.dist ? a.dist < b.dist : a.idx < b.idx;
    });
    all.resize(k);

    if (weighted) {
        bool any_zero = false;
        for (const Entry& e : all)
            if (e.dist == 0.0) any_zero = true;
        if (any_zero) {
            std::vector<int> zv(static_cast<std::size_t>(n_classes), 0);
            for (const Entry& e : all)
                if (e.dist == 0.0) ++zv[static_cast<std::size_t>(train_y[e.idx])];
            int best = 0;
            for (int c = 1; c < n_classes; ++c)
                if (zv[static_cast<std::size_t>(c)] > zv[static_cast<std::size_t>(best)])
                    best = c;
            return best;
        }
        std::vector<double> w(static_cast<std::size_t>(n_classes), 0.0);
        for (const Entry& e : all)
            w[static_cast<std::size_t>(train_y[e.idx])] += 1.0 / (e.dist + 1e-10);
        int best = 0;
        for (int c = 1; c < n_classes; ++c)
            if (w[static_cast<std::size_t>(c)] > w[static_cast<std::size_t>(best)]) best = c;
        return best;
    }

    std::vector<int> votes(static_cast<std::size_t>(n_classes), 0);
    std::vector<double> dsum(static_cast<std::size_t>(n_classes), 0.0);
    for (const Entry& e : all) {
        ++votes[static_cast<std::size_t>(train_y[e.idx])];
        dsum[static_cast<std::size_t>(train_y[e.idx])] += e.dist;
    }
    int best = 0;
    for (int c = 1; c < n_classes; ++c) {
        auto cc = static_cast<std::size_t>(c), bb = static_cast<std::size_t>(best);
        if (votes[cc] > votes[bb] || (votes[cc] == votes[bb] && dsum[cc] < dsum[bb]))
            best = c;
    }
    return best;
}

// Sort-based average-rank oracle.
inline std::vector<double> rank_oracle(const std::vector<double>& v, bool higher_is_better) {
    const std::size_t k = v.size();
    std::vector<double> ranks(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t better = 0, equal = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (j == i) continue;
            bool b = higher_is_better ? v[j] > v[i] : v[j] < v[i];
            if (b) ++better;
            if (v[j] == v[i]) ++equal;
        }
        ranks[i] = static_cast<double>(better) + 1.0 + static_cast<double>(equal) / 2.0;
    }
    return ranks;
}

// Contingency-table MI oracle over pre-assigned bin/class pairs.
inline double mi_oracle(const std::vector<std::size_t>& bins, const std::vector<int>& classes,
                        std::size_t n_bins, int n_classes) {
    const std::size_t n = bins.size();
    std::vector<std::vector<std::size_t>> table(
        n_bins, std::vector<std::size_t>(static_cast<std::size_t>(n_classes), 0));
    for (std::size_t i = 0; i < n; ++i)
        ++table[bins[i]][static_cast<std::size_t>(classes[i])];
    double mi = 0.0;
    for (std::size_t b = 0; b < n_bins; ++b)
        for (int c = 0; c < n_classes; ++c) {
            std::size_t nbc = table[b][static_cast<std::size_t>(c)];
            if (!nbc) continue;
            std::size_t nb = std::accumulate(table[b].begin(), table[b].end(),
                                             std::size_t{0});
            std::size_t nc = 0;
            for (std::size_t bb = 0; bb < n_bins; ++bb)
                nc += table[bb][static_cast<std::size_t>(c)];
            double pbc = static_cast<double>(nbc) / static_cast<double>(n);
            double pb = static_cast<double>(nb) / static_cast<double>(n);
            double pc = static_cast<double>(nc) / static_cast<double>(n);
            mi += pbc * std::log(pbc / (pb * pc));
        }
    return mi;
}

// Two well-separated Gaussian blobs, one per class.
inline obl::LabeledDataset separable_blobs(std::mt19937_64& rng, std::size_t per_class = 30,
                                           std::size_t d = 4, double separation = 50.0) {
    std::normal_distribution<double> noise(0.0, 1.0);
    obl::FeatureMatrix x(2 * per_class, d);
    std::vector<int> ids(2 * per_class);
    for (std::size_t i = 0; i < 2 * per_class; ++i) {
        int c = i < per_class ? 0 : 1;
        ids[i] = c;
        for (std::size_t j = 0; j < d; ++j)
            x(i, j) = (c ? separation : 0.0) + noise(rng);
    }
    return obl::LabeledDataset{std::move(x), make_labels(std::move(ids), 2)};
}

// Blob layout whose global mirror image lands in empty space: class 0 holds
// two clusters at (0,0,..) and (0,30,0,..), class 1 one cluster at (30,15,0,..).
// Reflections of every cluster across the global bounding box miss all
// clusters by a wide margin, so every opposition scheme keeps it separable.
inline obl::LabeledDataset asymmetric_blobs(std::mt19937_64& rng,
                                            std::size_t per_cluster = 15,
                                            std::size_t d = 4) {
    std::normal_distribution<double> noise(0.0, 1.0);
    obl::FeatureMatrix x(3 * per_cluster, d);
    std::vector<int> ids(3 * per_cluster);
    const double centers[3][2] = {{0, 0}, {0, 30}, {30, 15}};
    for (std::size_t i = 0; i < 3 * per_cluster; ++i) {
        std::size_t cluster = i / per_cluster;
        ids[i] = cluster == 2 ? 1 : 0;
        for (std::size_t j = 0; j < d; ++j)
            x(i, j) = (j < 2 ? centers[cluster][j] : 0.0) + noise(rng);
    }
    return obl::LabeledDataset{std::move(x), make_labels(std::move(ids), 2)};
}

}  // namespace testsupport
