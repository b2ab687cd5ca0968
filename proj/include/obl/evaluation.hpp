#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "obl/core.hpp"
#include "obl/pipeline.hpp"
#include "obl/rng.hpp"

namespace obl {

struct CvPlan {
    std::size_t n_folds = 5;
    std::size_t n_runs = 30;
    RngSeed seed;
};

struct FoldAssignment {
    std::vector<std::size_t> fold_of;
};

enum class F1Averaging { binary_positive, macro };

struct EvalReport {
    std::string dataset_id;
    std::string algorithm_id;
    double mean_accuracy = 0.0;
    double mean_f1 = 0.0;
    double mean_runtime_s = 0.0;
    std::size_t n_runs = 0;
    std::size_t n_folds = 0;
    std::vector<std::vector<double>> accuracy_cells;  // [run][fold]
    std::vector<std::vector<double>> f1_cells;
    std::vector<std::vector<double>> runtime_cells;
};

// Per class: shuffle with a run-specific stream, deal cyclically into folds.
// The dealing offset carries across classes so every fold is hit when
// n_samples >= n_folds.
inline FoldAssignment stratified_folds(const LabelVector& labels, const CvPlan& plan,
                                       std::size_t run_index) {
    const std::size_t n = labels.size();
    if (plan.n_folds > n)
        throw TooFewSamples("stratified_folds: more folds than samples");

    std::vector<std::vector<std::size_t>> by_class(
        static_cast<std::size_t>(labels.n_classes()));
    for (std::size_t i = 0; i < n; ++i)
        by_class[static_cast<std::size_t>(labels.labels[i])].push_back(i);

    auto rng = make_rng(plan.seed, 0x5f0ULL + run_index);
    FoldAssignment fa;
    fa.fold_of.assign(n, 0);
    std::size_t offset = 0;
    for (auto& members : by_class) {
        std::shuffle(members.begin(), members.end(), rng);
        for (std::size_t t = 0; t < members.size(); ++t)
            fa.fold_of[members[t]] = (offset + t) % plan.n_folds;
        offset += members.size();
    }
    return fa;
}

inline double accuracy(const LabelVector& pred, const LabelVector& truth) {
    if (pred.size() != truth.size())
        throw LengthMismatch("accuracy: length mismatch");
    if (truth.size() == 0) throw EmptyInput("accuracy: empty input");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i)
        if (pred.labels[i] == truth.labels[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

inline double f1_score(const LabelVector& pred, const LabelVector& truth,
                       F1Averaging averaging) {
    if (pred.size() != truth.size())
        throw LengthMismatch("f1_score: length mismatch");
    const int n_classes = std::max(pred.n_classes(), truth.n_classes());
    if (averaging == F1Averaging::binary_positive && n_classes != 2)
        throw Error("f1_score: binary_positive requires exactly two classes");

    auto f1_of_class = [&](int c) {
        std::size_t tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < truth.size(); ++i) {
            bool p = pred.labels[i] == c, t = truth.labels[i] == c;
            if (p && t) ++tp;
            else if (p) ++fp;
            else if (t) ++fn;
        }
        double prec = (tp + fp) ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
        double rec = (tp + fn) ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
        return (prec + rec > 0.0) ? 2.0 * prec * rec / (prec + rec) : 0.0;
    };

    if (averaging == F1Averaging::binary_positive) return f1_of_class(1);

    // macro: unweighted mean over classes present in truth
    double sum = 0.0;
    std::size_t present = 0;
    for (int c = 0; c < n_classes; ++c) {
        bool in_truth = false;
        for (std::size_t i = 0; i < truth.size(); ++i)
            if (truth.labels[i] == c) { in_truth = true; break; }
        if (!in_truth) continue;
        sum += f1_of_class(c);
        ++present;
    }
    return present ? sum / static_cast<double>(present) : 0.0;
}

inline LabeledDataset subset_rows(const LabeledDataset& ds,
                                  const std::vector<std::size_t>& rows) {
    FeatureMatrix x(rows.size(), ds.features.cols());
    LabelVector y;
    y.class_names = ds.labels.class_names;
    y.labels.reserve(rows.size());
    for (std::size_t t = 0; t < rows.size(); ++t) {
        for (std::size_t j = 0; j < x.cols(); ++j) x(t, j) = ds.features(rows[t], j);
        y.labels.push_back(ds.labels.labels[rows[t]]);
    }
    return LabeledDataset{std::move(x), std::move(y)};
}

inline EvalReport cross_validate(const LabeledDataset& ds, const PipelineConfig& cfg,
                                 const CvPlan& plan) {
    EvalReport rep;
    rep.n_runs = plan.n_runs;
    rep.n_folds = plan.n_folds;
    const F1Averaging avg = ds.labels.n_classes() == 2 ? F1Averaging::binary_positive
                                                       : F1Averaging::macro;
    rep.accuracy_cells.assign(plan.n_runs, std::vector<double>(plan.n_folds, 0.0));
    rep.f1_cells = rep.accuracy_cells;
    rep.runtime_cells = rep.accuracy_cells;

    for (std::size_t run = 0; run < plan.n_runs; ++run) {
        FoldAssignment fa = stratified_folds(ds.labels, plan, run);
        for (std::size_t fold = 0; fold < plan.n_folds; ++fold) {
            std::vector<std::size_t> train_rows, test_rows;
            for (std::size_t i = 0; i < ds.labels.size(); ++i)
                (fa.fold_of[i] == fold ? test_rows : train_rows).push_back(i);
            LabeledDataset train = subset_rows(ds, train_rows);
            LabeledDataset test = subset_rows(ds, test_rows);

            auto t0 = std::chrono::steady_clock::now();
            FittedPipeline fp = fit_pipeline(train, cfg);
            LabelVector pred = predict_pipeline(fp, test.features);
            auto t1 = std::chrono::steady_clock::now();

            rep.accuracy_cells[run][fold] = accuracy(pred, test.labels);
            rep.f1_cells[run][fold] = f1_score(pred, test.labels, avg);
            rep.runtime_cells[run][fold] =
                std::chrono::duration<double>(t1 - t0).count();
        }
    }

    auto mean_of = [&](const std::vector<std::vector<double>>& cells) {
        double s = 0.0;
        for (const auto& row : cells) s = std::accumulate(row.begin(), row.end(), s);
        return s / static_cast<double>(plan.n_runs * plan.n_folds);
    };
    rep.mean_accuracy = mean_of(rep.accuracy_cells);
    rep.mean_f1 = mean_of(rep.f1_cells);
    rep.mean_runtime_s = mean_of(rep.runtime_cells);
    return rep;
}

}  // namespace obl
