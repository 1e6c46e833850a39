#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "f2gan/numerics/types.hpp"

namespace f2gan {

struct FeatureSchema {
    std::vector<std::string> feature_names;
    std::string label_column;

    Index dimension() const { return static_cast<Index>(feature_names.size()); }
    void validate() const;

    bool operator==(const FeatureSchema&) const = default;
};

/// Labeled feature matrix. Labels are dense indices into class_names.
struct Dataset {
    Matrix X;
    std::vector<int> y;
    FeatureSchema schema;
    std::vector<std::string> class_names;

    Index rows() const { return X.rows(); }
    Index dimension() const { return X.cols(); }
    int class_count() const { return static_cast<int>(class_names.size()); }

    /// Throws ContractError on any broken invariant.
    void validate() const;

    /// Rows in the given order (indices may repeat).
    Dataset subset(const std::vector<Index>& rows) const;
};

struct ClassStats {
    std::vector<Index> counts;
    Index majority = 0;
    std::vector<double> ratios;  // counts[c] / majority
};

ClassStats class_stats(const Dataset& ds);

/// One-hot encoding of labels into `classes` columns.
Matrix one_hot(const std::vector<int>& labels, int classes);

/// Index of `name` in class_names, or -1.
int find_class(const Dataset& ds, const std::string& name);

/// Re-express `ds` labels in the class order of `reference_names`. The two
/// label sets must coincide (as sets); throws ContractError otherwise.
Dataset align_classes(const Dataset& ds, const std::vector<std::string>& reference_names);

/// Deterministic stratification-free split: rows are permuted with `seed`,
/// the first round(fraction*N) go to the second part.
std::pair<Dataset, Dataset> split(const Dataset& ds, double test_fraction, std::uint64_t seed);

} // namespace f2gan
