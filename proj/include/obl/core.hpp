#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace obl {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};
struct LengthMismatch : Error {
    using Error::Error;
};
struct IndexOutOfRange : Error {
    using Error::Error;
};
struct KOutOfRange : Error {
    using Error::Error;
};
struct KTooLarge : Error {
    using Error::Error;
};
struct AllMissingFeature : Error {
    std::size_t feature;
    explicit AllMissingFeature(std::size_t k)
        : Error("feature " + std::to_string(k) + " has no finite value to impute from"),
          feature(k) {}
};
struct MissingPivot : Error {
    using Error::Error;
};
struct MissingBounds : Error {
    using Error::Error;
};
struct TooFewSamples : Error {
    using Error::Error;
};
struct DegenerateInput : Error {
    using Error::Error;
};
struct EmptyInput : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

// Dense row-major matrix, rows = samples, columns = features.
class FeatureMatrix {
public:
    FeatureMatrix() = default;
    FeatureMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_)
            throw DimensionMismatch("FeatureMatrix: data size does not match shape");
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    std::vector<double> row(std::size_t i) const {
        return std::vector<double>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }
    const double* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }

    std::vector<double> column(std::size_t j) const {
        std::vector<double> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    bool operator==(const FeatureMatrix& o) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Dense class ids 0..C-1 plus the original label strings per id.
struct LabelVector {
    std::vector<int> labels;
    std::vector<std::string> class_names;

    std::size_t size() const { return labels.size(); }
    int n_classes() const { return static_cast<int>(class_names.size()); }

    bool operator==(const LabelVector& o) const = default;
};

struct LabeledDataset {
    FeatureMatrix features;
    LabelVector labels;
};

// Per-feature [lower, upper] interval; houses the reflection bounds.
struct FeatureBounds {
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t size() const { return lower.size(); }
};

struct RngSeed {
    std::uint64_t seed = 0;
};

inline std::vector<std::string> validate_dataset(const LabeledDataset& ds) {
    std::vector<std::string> violations;
    const FeatureMatrix& x = ds.features;
    if (x.rows() < 1) violations.push_back("matrix has no rows");
    if (x.cols() < 1) violations.push_back("matrix has no columns");
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            if (!std::isfinite(x(i, j)))
                violations.push_back("non-finite value at (" + std::to_string(i) + "," +
                                     std::to_string(j) + ")");
    if (ds.labels.size() != x.rows())
        violations.push_back("label count " + std::to_string(ds.labels.size()) +
                             " does not match row count " + std::to_string(x.rows()));
    const int n_classes = ds.labels.n_classes();
    std::vector<std::size_t> counts(static_cast<std::size_t>(std::max(n_classes, 0)), 0);
    for (std::size_t i = 0; i < ds.labels.size(); ++i) {
        int c = ds.labels.labels[i];
        if (c < 0 || c >= n_classes)
            violations.push_back("label id " + std::to_string(c) + " at row " +
                                 std::to_string(i) + " outside 0.." +
                                 std::to_string(n_classes - 1));
        else
            ++counts[static_cast<std::size_t>(c)];
    }
    for (int c = 0; c < n_classes; ++c)
        if (counts[static_cast<std::size_t>(c)] == 0)
            violations.push_back("class " + std::to_string(c) + " has no samples");
    return violations;
}

}  // namespace obl
