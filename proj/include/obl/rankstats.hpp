#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "obl/chi2.hpp"
#include "obl/core.hpp"

namespace obl {

struct ScoreMatrix {
    std::vector<std::vector<double>> scores;  // [dataset][algorithm]
    bool higher_is_better = true;
};

struct FriedmanResult {
    std::vector<double> mean_ranks;
    double statistic = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
};

// Average-rank tie handling; rank 1 = best.
inline std::vector<double> rank_row(const std::vector<double>& values, bool higher_is_better) {
    const std::size_t k = values.size();
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return higher_is_better ? values[a] > values[b] : values[a] < values[b];
    });
    std::vector<double> ranks(k);
    std::size_t i = 0;
    while (i < k) {
        std::size_t j = i;
        while (j + 1 < k && values[order[j + 1]] == values[order[i]]) ++j;
        double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
        i = j + 1;
    }
    return ranks;
}

inline FriedmanResult friedman(const ScoreMatrix& sm) {
    const std::size_t n = sm.scores.size();
    if (n < 2) throw DegenerateInput("friedman: need at least 2 datasets");
    const std::size_t k = sm.scores[0].size();
    if (k < 2) throw DegenerateInput("friedman: need at least 2 algorithms");
    for (const auto& row : sm.scores)
        if (row.size() != k) throw DimensionMismatch("friedman: ragged score matrix");

    FriedmanResult res;
    res.mean_ranks.assign(k, 0.0);
    for (const auto& row : sm.scores) {
        std::vector<double> r = rank_row(row, sm.higher_is_better);
        for (std::size_t j = 0; j < k; ++j) res.mean_ranks[j] += r[j];
    }
    for (double& r : res.mean_ranks) r /= static_cast<double>(n);

    double sum_r2 = 0.0;
    for (double r : res.mean_ranks) sum_r2 += r * r;
    const double dk = static_cast<double>(k);
    const double dn = static_cast<double>(n);
    res.statistic = 12.0 * dn / (dk * (dk + 1.0)) *
                    (sum_r2 - dk * (dk + 1.0) * (dk + 1.0) / 4.0);
    if (res.statistic < 0.0) res.statistic = 0.0;  // clamp float noise on total ties
    res.dof = k - 1;
    res.p_value = chi_square_sf(res.statistic, static_cast<double>(res.dof));
    return res;
}

}  // namespace obl
