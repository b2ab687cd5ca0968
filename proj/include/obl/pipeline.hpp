#pragma once

#include <cstddef>
#include <optional>

#include "obl/core.hpp"
#include "obl/feature_select.hpp"
#include "obl/knn.hpp"
#include "obl/opposition.hpp"
#include "obl/preprocess.hpp"

namespace obl {

struct PipelineConfig {
    ScalerKind scaler_kind = ScalerKind::zscore;
    ImputePolicy impute;
    std::optional<std::size_t> n_select;
    std::optional<OblScheme> scheme;
    AugmentMode mode = AugmentMode::augment;
    bool renormalize_opposites = true;
    std::size_t k = 3;
    bool weighted = false;
    RngSeed seed;
};

// All components fitted from the training fold only; test rows pass through
// impute -> scale -> project -> knn and are never opposed.
struct FittedPipeline {
    FeatureMatrix impute_stats;  // raw training matrix, source of fill statistics
    ImputePolicy impute_policy;
    ScalerModel scaler;
    std::optional<SelectionResult> selection;
    std::optional<ScalerModel> opposite_scaler;
    KnnModel model;
};

namespace detail {

inline LabeledDataset oppose_training(const LabeledDataset& train, const OblScheme& scheme) {
    switch (scheme.kind) {
        case OblKind::global: {
            FeatureBounds b = compute_bounds(train.features);
            return LabeledDataset{oppose_global(train.features, b), train.labels};
        }
        case OblKind::classwise:
            return oppose_classwise(train);
        case OblKind::localized_classwise:
            return oppose_localized(train, scheme.p);
    }
    throw Error("oppose_training: unknown scheme");
}

inline LabeledDataset concat(const LabeledDataset& a, const LabeledDataset& b) {
    FeatureMatrix x(a.features.rows() + b.features.rows(), a.features.cols());
    for (std::size_t i = 0; i < a.features.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) = a.features(i, j);
    for (std::size_t i = 0; i < b.features.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            x(a.features.rows() + i, j) = b.features(i, j);
    LabelVector y;
    y.class_names = a.labels.class_names;
    y.labels = a.labels.labels;
    y.labels.insert(y.labels.end(), b.labels.labels.begin(), b.labels.labels.end());
    return LabeledDataset{std::move(x), std::move(y)};
}

}  // namespace detail

inline FittedPipeline fit_pipeline(const LabeledDataset& train, const PipelineConfig& cfg) {
    FittedPipeline fp;
    fp.impute_stats = train.features;
    fp.impute_policy = cfg.impute;

    FeatureMatrix x = impute(train.features, cfg.impute, &train.features);
    fp.scaler = fit_scaler(cfg.scaler_kind, x);
    x = apply_scaler(fp.scaler, x);

    if (cfg.n_select) {
        std::size_t k_sel = std::min(*cfg.n_select, x.cols());
        fp.selection = select_top_k(x, train.labels, k_sel);
        x = project(x, *fp.selection);
    }

    LabeledDataset scaled{std::move(x), train.labels};
    LabeledDataset train_set = scaled;

    if (cfg.scheme) {
        LabeledDataset opposites = detail::oppose_training(scaled, *cfg.scheme);
        if (cfg.renormalize_opposites) {
            fp.opposite_scaler = fit_scaler(ScalerKind::zscore, opposites.features);
            opposites.features = apply_scaler(*fp.opposite_scaler, opposites.features);
        }
        train_set = cfg.mode == AugmentMode::augment ? detail::concat(scaled, opposites)
                                                     : opposites;
    }

    fp.model = knn_fit(train_set, cfg.k, cfg.weighted);
    return fp;
}

inline LabelVector predict_pipeline(const FittedPipeline& fp, const FeatureMatrix& test_x) {
    if (test_x.cols() != fp.impute_stats.cols())
        throw DimensionMismatch("predict_pipeline: column count differs from training data");
    FeatureMatrix x = impute(test_x, fp.impute_policy, &fp.impute_stats);
    x = apply_scaler(fp.scaler, x);
    if (fp.selection) x = project(x, *fp.selection);
    return knn_predict(fp.model, x);
}

}  // namespace obl
