#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "obl/opposition.hpp"
#include "obl/preprocess.hpp"
#include "support.hpp"

using namespace obl;

TEST_CASE("compute_bounds returns per-feature min/max") {
    FeatureMatrix x(2, 2, {0, 5, 2, 1});
    FeatureBounds b = compute_bounds(x);
    CHECK(b.lower == std::vector<double>{0, 1});
    CHECK(b.upper == std::vector<double>{2, 5});
}

TEST_CASE("compute_bounds on a single row degenerates to that row") {
    FeatureBounds b = compute_bounds(FeatureMatrix(1, 1, {3}));
    CHECK(b.lower[0] == 3);
    CHECK(b.upper[0] == 3);
}

TEST_CASE("compute_bounds is row-permutation invariant") {
    std::mt19937_64 rng(1);
    LabeledDataset ds = testsupport::random_dataset(rng, 40, 5);
    FeatureMatrix shuffled = ds.features;
    std::vector<std::size_t> perm(ds.features.rows());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = 0; j < ds.features.cols(); ++j)
            shuffled(i, j) = ds.features(perm[i], j);
    FeatureBounds a = compute_bounds(ds.features);
    FeatureBounds b = compute_bounds(shuffled);
    CHECK(a.lower == b.lower);
    CHECK(a.upper == b.upper);
}

TEST_CASE("oppose_global reflects across a + b") {
    FeatureMatrix x(1, 1, {0.5});
    FeatureBounds b{{0}, {2}};
    CHECK(oppose_global(x, b)(0, 0) == 1.5);
}

TEST_CASE("midpoint rows are fixed points of reflection") {
    FeatureBounds b{{0, -2}, {4, 6}};
    FeatureMatrix x(1, 2, {2, 2});  // (a+b)/2 per feature
    CHECK(oppose_global(x, b) == x);
}

TEST_CASE("oppose_global is an involution to within 1e-12") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 100; ++t) {
        LabeledDataset ds = testsupport::random_dataset(rng);
        FeatureBounds b = compute_bounds(ds.features);
        FeatureMatrix back = oppose_global(oppose_global(ds.features, b), b);
        double max_err = 0.0;
        for (std::size_t i = 0; i < back.rows(); ++i)
            for (std::size_t j = 0; j < back.cols(); ++j)
                max_err = std::max(max_err, std::abs(back(i, j) - ds.features(i, j)));
        CHECK(max_err < 1e-12);
    }
}

TEST_CASE("oppose_global rejects mismatched bounds") {
    CHECK_THROWS_AS(oppose_global(FeatureMatrix(1, 2), FeatureBounds{{0}, {1}}),
                    DimensionMismatch);
}

TEST_CASE("single-class oppose_classwise equals oppose_global with class bounds") {
    std::mt19937_64 rng(3);
    LabeledDataset ds = testsupport::random_dataset(rng, 40, 5, 1);
    LabeledDataset out = oppose_classwise(ds);
    CHECK(out.features == oppose_global(ds.features, compute_bounds(ds.features)));
    CHECK(out.labels == ds.labels);
}

TEST_CASE("a singleton class is its own opposite") {
    FeatureMatrix x(3, 2, {0, 0, 9, 9, 5, 7});
    LabeledDataset ds{x, testsupport::make_labels({0, 0, 1}, 2)};
    LabeledDataset out = oppose_classwise(ds);
    CHECK(out.features(2, 0) == 5);
    CHECK(out.features(2, 1) == 7);
}

TEST_CASE("class-wise opposites stay inside their own class box") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 50; ++t) {
        LabeledDataset ds = testsupport::random_dataset(rng, 60, 6, 3);
        LabeledDataset out = oppose_classwise(ds);
        // brute-force per-class min/max
        for (std::size_t i = 0; i < ds.features.rows(); ++i) {
            int c = ds.labels.labels[i];
            for (std::size_t j = 0; j < ds.features.cols(); ++j) {
                double lo = 1e300, hi = -1e300;
                for (std::size_t m = 0; m < ds.features.rows(); ++m)
                    if (ds.labels.labels[m] == c) {
                        lo = std::min(lo, ds.features(m, j));
                        hi = std::max(hi, ds.features(m, j));
                    }
                CHECK(out.features(i, j) >= lo - 1e-12);
                CHECK(out.features(i, j) <= hi + 1e-12);
                CHECK(out.features(i, j) == lo + hi - ds.features(i, j));
            }
        }
    }
}

TEST_CASE("oppose_classwise is an involution to within 1e-12") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        LabeledDataset ds = testsupport::random_dataset(rng);
        LabeledDataset out = oppose_classwise(oppose_classwise(ds));
        double max_err = 0.0;
        for (std::size_t i = 0; i < out.features.rows(); ++i)
            for (std::size_t j = 0; j < out.features.cols(); ++j)
                max_err = std::max(max_err,
                                   std::abs(out.features(i, j) - ds.features(i, j)));
        CHECK(max_err < 1e-12);
        CHECK(out.labels == ds.labels);
    }
}

TEST_CASE("localized opposition of a singleton class returns the row") {
    FeatureMatrix x(3, 1, {1, 2, 9});
    LabeledDataset ds{x, testsupport::make_labels({0, 0, 1}, 2)};
    LabeledDataset out = oppose_localized(ds, 3);
    CHECK(out.features(2, 0) == 9);
}

TEST_CASE("large p reduces localized to class-wise opposition") {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 20; ++t) {
        LabeledDataset ds = testsupport::random_dataset(rng, 30, 4, 3);
        LabeledDataset a = oppose_localized(ds, ds.features.rows());
        LabeledDataset b = oppose_classwise(ds);
        CHECK(a.features == b.features);
    }
}

TEST_CASE("localized opposites stay inside their neighbor-set box") {
    std::mt19937_64 rng(7);
    LabeledDataset ds = testsupport::random_dataset(rng, 30, 4, 2);
    const std::size_t p = 3;
    LabeledDataset out = oppose_localized(ds, p);
    CHECK(out.labels == ds.labels);
    // independent neighbor + min/max oracle
    for (std::size_t i = 0; i < ds.features.rows(); ++i) {
        int c = ds.labels.labels[i];
        std::vector<std::pair<double, std::size_t>> dists;
        for (std::size_t m = 0; m < ds.features.rows(); ++m) {
            if (m == i || ds.labels.labels[m] != c) continue;
            double d2 = 0;
            for (std::size_t j = 0; j < ds.features.cols(); ++j) {
                double d = ds.features(i, j) - ds.features(m, j);
                d2 += d * d;
            }
            dists.emplace_back(d2, m);
        }
        std::sort(dists.begin(), dists.end());
        std::vector<std::size_t> set{i};
        if (dists.size() <= p)
            for (auto& [d2, m] : dists) set.push_back(m);
        else
            for (std::size_t t = 0; t < p; ++t) set.push_back(dists[t].second);
        for (std::size_t j = 0; j < ds.features.cols(); ++j) {
            double lo = 1e300, hi = -1e300;
            for (std::size_t m : set) {
                lo = std::min(lo, ds.features(m, j));
                hi = std::max(hi, ds.features(m, j));
            }
            CHECK(out.features(i, j) >= lo - 1e-12);
            CHECK(out.features(i, j) <= hi + 1e-12);
            CHECK(out.features(i, j) == lo + hi - ds.features(i, j));
        }
    }
}

TEST_CASE("reflection identity: x + x* = lower + upper") {
    std::mt19937_64 rng(8);
    LabeledDataset ds = testsupport::random_dataset(rng, 50, 6);
    FeatureBounds b = compute_bounds(ds.features);
    FeatureMatrix opp = oppose_global(ds.features, b);
    for (std::size_t i = 0; i < ds.features.rows(); ++i)
        for (std::size_t j = 0; j < ds.features.cols(); ++j)
            CHECK(ds.features(i, j) + opp(i, j) ==
                  Catch::Approx(b.lower[j] + b.upper[j]).margin(1e-12));
}

TEST_CASE("negation identity through z-scoring") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 20; ++t) {
        LabeledDataset ds = testsupport::random_dataset(rng, 50, 6);
        FeatureMatrix z =
            apply_scaler(fit_scaler(ScalerKind::zscore, ds.features), ds.features);
        FeatureMatrix o = oppose_global(z, compute_bounds(z));
        FeatureMatrix o_z = apply_scaler(fit_scaler(ScalerKind::zscore, o), o);
        for (std::size_t i = 0; i < z.rows(); ++i)
            for (std::size_t j = 0; j < z.cols(); ++j)
                CHECK(std::abs(o_z(i, j) + z(i, j)) < 1e-9);
    }
}

TEST_CASE("gobl with k = 1 reduces to the plain reflection") {
    VariantParams p;
    p.kind = VariantKind::gobl;
    p.k_scale = 1.0;
    FeatureMatrix x(1, 1, {0.5});
    FeatureMatrix out = oppose_variant(x, FeatureBounds{{0}, {2}}, p, RngSeed{1});
    CHECK(out(0, 0) == 1.5);
}

TEST_CASE("cobl reflects through the population centroid") {
    VariantParams p;
    p.kind = VariantKind::cobl;
    FeatureMatrix x(2, 1, {0, 2});
    FeatureMatrix out = oppose_variant(x, FeatureBounds{}, p, RngSeed{1});
    CHECK(out(0, 0) == 2);
    CHECK(out(1, 0) == 0);
}

TEST_CASE("coobl reflects through the pivot") {
    VariantParams p;
    p.kind = VariantKind::coobl;
    p.pivot = std::vector<double>{1.0};
    FeatureMatrix x(1, 1, {0.25});
    FeatureMatrix out = oppose_variant(x, FeatureBounds{}, p, RngSeed{1});
    CHECK(out(0, 0) == 1.75);
}

TEST_CASE("qobl lands between center and opposite for every seed") {
    VariantParams p;
    p.kind = VariantKind::qobl;
    FeatureMatrix x(1, 1, {0.5});
    FeatureBounds b{{0}, {2}};
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        double v = oppose_variant(x, b, p, RngSeed{seed})(0, 0);
        CHECK(v >= 1.0);
        CHECK(v <= 1.5);
    }
}

TEST_CASE("dobl blends toward the standard opposite") {
    VariantParams p;
    p.kind = VariantKind::dobl;
    p.eta = 0.5;
    FeatureMatrix x(1, 1, {0.5});
    FeatureMatrix out = oppose_variant(x, FeatureBounds{{0}, {2}}, p, RngSeed{1});
    CHECK(out(0, 0) == 1.0);  // halfway between 0.5 and 1.5
}

TEST_CASE("beta_coobl stays on the pivot-reflection segment") {
    VariantParams p;
    p.kind = VariantKind::beta_coobl;
    p.pivot = std::vector<double>{0.5};
    FeatureMatrix x(1, 1, {0.3});
    FeatureBounds b{{0}, {2}};
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        double v = oppose_variant(x, b, p, RngSeed{seed})(0, 0);
        CHECK(v >= 0.5);  // x* + beta * (a + b - 2 x*), beta in (0,1)
        CHECK(v <= 1.5);
    }
}

TEST_CASE("robl without noise is pivot reflection") {
    VariantParams p;
    p.kind = VariantKind::robl;
    p.pivot = std::vector<double>{1.0};
    p.delta_sigma = 0.0;
    FeatureMatrix x(1, 1, {0.25});
    CHECK(oppose_variant(x, FeatureBounds{}, p, RngSeed{3})(0, 0) == 1.75);
}

TEST_CASE("oppose_variant reports missing pivot and bounds") {
    VariantParams p;
    p.kind = VariantKind::coobl;
    CHECK_THROWS_AS(oppose_variant(FeatureMatrix(1, 1), FeatureBounds{}, p, RngSeed{}),
                    MissingPivot);
    p.kind = VariantKind::gobl;
    CHECK_THROWS_AS(oppose_variant(FeatureMatrix(1, 1), FeatureBounds{}, p, RngSeed{}),
                    MissingBounds);
}

TEST_CASE("oppose_variant is deterministic per seed") {
    std::mt19937_64 rng(10);
    LabeledDataset ds = testsupport::random_dataset(rng, 30, 4);
    FeatureBounds b = compute_bounds(ds.features);
    for (VariantKind kind : {VariantKind::gobl, VariantKind::qobl, VariantKind::beta_coobl,
                             VariantKind::robl}) {
        VariantParams p;
        p.kind = kind;
        p.pivot = std::vector<double>(ds.features.cols(), 0.5);
        p.delta_sigma = 0.1;
        FeatureMatrix a = oppose_variant(ds.features, b, p, RngSeed{99});
        FeatureMatrix c = oppose_variant(ds.features, b, p, RngSeed{99});
        CHECK(a == c);
    }
}
