#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "obl/core.hpp"

namespace obl {

enum class ScalerKind { zscore, minmax, robust };
enum class ImputeStrategy { feature_mean, feature_median, drop_row };

struct ImputePolicy {
    ImputeStrategy strategy = ImputeStrategy::feature_mean;
};

// Fitted per-feature center/scale statistics. Fit and apply are separate so
// test folds are always scaled by training-fold statistics.
struct ScalerModel {
    ScalerKind kind = ScalerKind::zscore;
    std::vector<double> center;
    std::vector<double> scale;

    std::string to_text() const {
        std::ostringstream os;
        os.precision(17);
        os << "kind = ";
        switch (kind) {
            case ScalerKind::zscore: os << "zscore"; break;
            case ScalerKind::minmax: os << "minmax"; break;
            case ScalerKind::robust: os << "robust"; break;
        }
        os << "\ncenter =";
        for (double v : center) os << ' ' << v;
        os << "\nscale =";
        for (double v : scale) os << ' ' << v;
        os << '\n';
        return os.str();
    }
};

namespace detail {

// Linear interpolation between order statistics on sorted data.
inline double quantile_sorted(const std::vector<double>& sorted, double q) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    double pos = q * static_cast<double>(n - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    if (lo >= n - 1) return sorted[n - 1];
    double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

inline std::vector<double> finite_column(const FeatureMatrix& x, std::size_t j) {
    std::vector<double> v;
    v.reserve(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i)
        if (std::isfinite(x(i, j))) v.push_back(x(i, j));
    return v;
}

}  // namespace detail

inline FeatureMatrix impute(const FeatureMatrix& x, ImputePolicy policy,
                            const FeatureMatrix* stats_from = nullptr) {
    const FeatureMatrix& src = stats_from ? *stats_from : x;
    if (src.cols() != x.cols())
        throw DimensionMismatch("impute: stats_from column count differs");

    if (policy.strategy == ImputeStrategy::drop_row) {
        std::vector<double> kept;
        std::size_t n = 0;
        for (std::size_t i = 0; i < x.rows(); ++i) {
            bool ok = true;
            for (std::size_t j = 0; j < x.cols(); ++j)
                if (!std::isfinite(x(i, j))) { ok = false; break; }
            if (!ok) continue;
            for (std::size_t j = 0; j < x.cols(); ++j) kept.push_back(x(i, j));
            ++n;
        }
        return FeatureMatrix(n, x.cols(), std::move(kept));
    }

    std::vector<double> fill(x.cols());
    for (std::size_t j = 0; j < x.cols(); ++j) {
        std::vector<double> col = detail::finite_column(src, j);
        if (col.empty()) throw AllMissingFeature(j);
        if (policy.strategy == ImputeStrategy::feature_mean) {
            double s = 0.0;
            for (double v : col) s += v;
            fill[j] = s / static_cast<double>(col.size());
        } else {
            std::sort(col.begin(), col.end());
            fill[j] = detail::quantile_sorted(col, 0.5);
        }
    }
    FeatureMatrix out = x;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            if (!std::isfinite(out(i, j))) out(i, j) = fill[j];
    return out;
}

inline ScalerModel fit_scaler(ScalerKind kind, const FeatureMatrix& x) {
    ScalerModel m;
    m.kind = kind;
    m.center.resize(x.cols());
    m.scale.resize(x.cols());
    const double n = static_cast<double>(x.rows());
    for (std::size_t j = 0; j < x.cols(); ++j) {
        switch (kind) {
            case ScalerKind::zscore: {
                double mean = 0.0;
                for (std::size_t i = 0; i < x.rows(); ++i) mean += x(i, j);
                mean /= n;
                double ss = 0.0;
                for (std::size_t i = 0; i < x.rows(); ++i) {
                    double d = x(i, j) - mean;
                    ss += d * d;
                }
                m.center[j] = mean;
                m.scale[j] = std::sqrt(ss / n);  // population std
                break;
            }
            case ScalerKind::minmax: {
                double lo = x(0, j), hi = x(0, j);
                for (std::size_t i = 1; i < x.rows(); ++i) {
                    lo = std::min(lo, x(i, j));
                    hi = std::max(hi, x(i, j));
                }
                m.center[j] = lo;
                m.scale[j] = hi - lo;
                break;
            }
            case ScalerKind::robust: {
                std::vector<double> col = x.column(j);
                std::sort(col.begin(), col.end());
                m.center[j] = detail::quantile_sorted(col, 0.5);
                m.scale[j] = detail::quantile_sorted(col, 0.75) -
                             detail::quantile_sorted(col, 0.25);
                break;
            }
        }
        if (m.scale[j] <= 0.0) m.scale[j] = 1.0;  // degenerate feature stays inert
    }
    return m;
}

inline FeatureMatrix apply_scaler(const ScalerModel& m, const FeatureMatrix& x) {
    if (m.center.size() != x.cols())
        throw DimensionMismatch("apply_scaler: feature count differs from model");
    FeatureMatrix out = x;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            out(i, j) = (x(i, j) - m.center[j]) / m.scale[j];
    return out;
}

}  // namespace obl
