#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "obl/core.hpp"
#include "obl/rng.hpp"

namespace obl {

enum class OblKind { global, classwise, localized_classwise };

struct OblScheme {
    OblKind kind = OblKind::global;
    std::size_t p = 3;  // neighbor count, localized_classwise only
};

enum class AugmentMode { augment, replace };

enum class VariantKind { gobl, qobl, cobl, coobl, dobl, beta_coobl, robl };

struct VariantParams {
    VariantKind kind = VariantKind::gobl;
    std::optional<double> k_scale;       // GOBL's k; random per row when unset
    double eta = 0.5;                    // DOBL blend strength
    double beta_a = 2.0, beta_b = 2.0;   // Beta distribution shape parameters
    double delta_sigma = 0.0;            // ROBL Gaussian noise scale
    std::optional<std::vector<double>> pivot;  // x* for coobl / beta_coobl / robl
};

inline FeatureBounds compute_bounds(const FeatureMatrix& x) {
    FeatureBounds b;
    b.lower.resize(x.cols());
    b.upper.resize(x.cols());
    for (std::size_t j = 0; j < x.cols(); ++j) {
        double lo = x(0, j), hi = x(0, j);
        for (std::size_t i = 1; i < x.rows(); ++i) {
            lo = std::min(lo, x(i, j));
            hi = std::max(hi, x(i, j));
        }
        b.lower[j] = lo;
        b.upper[j] = hi;
    }
    return b;
}

// x* = a + b - x per feature.
inline FeatureMatrix oppose_global(const FeatureMatrix& x, const FeatureBounds& bounds) {
    if (bounds.size() != x.cols())
        throw DimensionMismatch("oppose_global: bounds dimension differs");
    FeatureMatrix out = x;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            out(i, j) = bounds.lower[j] + bounds.upper[j] - x(i, j);
    return out;
}

// Per-class bounds; labels copied, row order preserved.
inline LabeledDataset oppose_classwise(const LabeledDataset& ds) {
    const FeatureMatrix& x = ds.features;
    const int n_classes = ds.labels.n_classes();
    std::vector<FeatureBounds> per_class(static_cast<std::size_t>(n_classes));
    std::vector<bool> seen(static_cast<std::size_t>(n_classes), false);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        auto c = static_cast<std::size_t>(ds.labels.labels[i]);
        if (!seen[c]) {
            per_class[c].lower = x.row(i);
            per_class[c].upper = x.row(i);
            seen[c] = true;
        } else {
            for (std::size_t j = 0; j < x.cols(); ++j) {
                per_class[c].lower[j] = std::min(per_class[c].lower[j], x(i, j));
                per_class[c].upper[j] = std::max(per_class[c].upper[j], x(i, j));
            }
        }
    }
    LabeledDataset out{FeatureMatrix(x.rows(), x.cols()), ds.labels};
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const auto& b = per_class[static_cast<std::size_t>(ds.labels.labels[i])];
        for (std::size_t j = 0; j < x.cols(); ++j)
            out.features(i, j) = b.lower[j] + b.upper[j] - x(i, j);
    }
    return out;
}

// Bounds from each sample plus its p nearest same-class neighbors.
// Classes with at most p samples fall back to whole-class bounds.
inline LabeledDataset oppose_localized(const LabeledDataset& ds, std::size_t p) {
    const FeatureMatrix& x = ds.features;
    const std::size_t n = x.rows();
    std::vector<std::vector<std::size_t>> by_class(
        static_cast<std::size_t>(ds.labels.n_classes()));
    for (std::size_t i = 0; i < n; ++i)
        by_class[static_cast<std::size_t>(ds.labels.labels[i])].push_back(i);

    LabeledDataset out{FeatureMatrix(n, x.cols()), ds.labels};
    std::vector<std::pair<double, std::size_t>> dists;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& members = by_class[static_cast<std::size_t>(ds.labels.labels[i])];
        std::vector<std::size_t> set;
        if (members.size() <= p + 1) {
            set = members;
        } else {
            dists.clear();
            for (std::size_t m : members) {
                if (m == i) continue;
                double d2 = 0.0;
                for (std::size_t j = 0; j < x.cols(); ++j) {
                    double d = x(i, j) - x(m, j);
                    d2 += d * d;
                }
                dists.emplace_back(d2, m);
            }
            std::sort(dists.begin(), dists.end());  // ties by lower row index
            set.push_back(i);
            for (std::size_t t = 0; t < p; ++t) set.push_back(dists[t].second);
        }
        for (std::size_t j = 0; j < x.cols(); ++j) {
            double lo = x(set[0], j), hi = x(set[0], j);
            for (std::size_t m : set) {
                lo = std::min(lo, x(m, j));
                hi = std::max(hi, x(m, j));
            }
            out.features(i, j) = lo + hi - x(i, j);
        }
    }
    return out;
}

// Generic opposition kernels from the optimization literature; operate on a
// plain point population, not on labeled datasets.
inline FeatureMatrix oppose_variant(const FeatureMatrix& points, const FeatureBounds& bounds,
                                    const VariantParams& params, RngSeed seed) {
    const std::size_t d = points.cols();
    const bool needs_bounds = params.kind == VariantKind::gobl ||
                              params.kind == VariantKind::qobl ||
                              params.kind == VariantKind::dobl ||
                              params.kind == VariantKind::beta_coobl;
    if (needs_bounds && bounds.size() != d)
        throw MissingBounds("oppose_variant: bounds required for this variant");
    const bool needs_pivot = params.kind == VariantKind::coobl ||
                             params.kind == VariantKind::beta_coobl ||
                             params.kind == VariantKind::robl;
    if (needs_pivot && (!params.pivot || params.pivot->size() != d))
        throw MissingPivot("oppose_variant: pivot required for this variant");

    auto rng = make_rng(seed);
    FeatureMatrix out = points;

    std::vector<double> centroid;
    if (params.kind == VariantKind::cobl) {
        centroid.assign(d, 0.0);
        for (std::size_t i = 0; i < points.rows(); ++i)
            for (std::size_t j = 0; j < d; ++j) centroid[j] += points(i, j);
        for (double& c : centroid) c /= static_cast<double>(points.rows());
    }

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::gamma_distribution<double> gamma_a(params.beta_a, 1.0);
    std::gamma_distribution<double> gamma_b(params.beta_b, 1.0);
    std::normal_distribution<double> gauss(0.0, params.delta_sigma > 0 ? params.delta_sigma : 1.0);

    for (std::size_t i = 0; i < points.rows(); ++i) {
        switch (params.kind) {
            case VariantKind::gobl: {
                double k = params.k_scale ? *params.k_scale : unit(rng);
                for (std::size_t j = 0; j < d; ++j)
                    out(i, j) = k * (bounds.lower[j] + bounds.upper[j]) - points(i, j);
                break;
            }
            case VariantKind::qobl: {
                for (std::size_t j = 0; j < d; ++j) {
                    double center = 0.5 * (bounds.lower[j] + bounds.upper[j]);
                    double opposite = bounds.lower[j] + bounds.upper[j] - points(i, j);
                    double lo = std::min(center, opposite), hi = std::max(center, opposite);
                    out(i, j) = lo + unit(rng) * (hi - lo);
                }
                break;
            }
            case VariantKind::cobl:
                for (std::size_t j = 0; j < d; ++j)
                    out(i, j) = 2.0 * centroid[j] - points(i, j);
                break;
            case VariantKind::coobl:
                for (std::size_t j = 0; j < d; ++j)
                    out(i, j) = 2.0 * (*params.pivot)[j] - points(i, j);
                break;
            case VariantKind::dobl:
                // Blend toward the standard opposite with strength eta.
                for (std::size_t j = 0; j < d; ++j) {
                    double opposite = bounds.lower[j] + bounds.upper[j] - points(i, j);
                    out(i, j) = points(i, j) + params.eta * (opposite - points(i, j));
                }
                break;
            case VariantKind::beta_coobl: {
                double ga = gamma_a(rng), gb = gamma_b(rng);
                double beta = ga / (ga + gb);
                for (std::size_t j = 0; j < d; ++j)
                    out(i, j) = (*params.pivot)[j] +
                                beta * (bounds.lower[j] + bounds.upper[j] -
                                        2.0 * (*params.pivot)[j]);
                break;
            }
            case VariantKind::robl:
                for (std::size_t j = 0; j < d; ++j) {
                    double noise = params.delta_sigma > 0 ? gauss(rng) : 0.0;
                    out(i, j) = 2.0 * (*params.pivot)[j] - points(i, j) + noise;
                }
                break;
        }
    }
    return out;
}

}  // namespace obl
