#include "f2gan/data/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "f2gan/errors.hpp"
#include "f2gan/numerics/rng.hpp"

namespace f2gan {

void FeatureSchema::validate() const {
    if (feature_names.empty()) {
        throw ContractError("schema: no feature columns");
    }
    std::unordered_set<std::string> seen;
    for (const auto& name : feature_names) {
        if (name.empty()) {
            throw ContractError("schema: empty feature name");
        }
        if (!seen.insert(name).second) {
            throw ContractError("schema: duplicate feature name '" + name + "'");
        }
    }
    if (label_column.empty()) {
        throw ContractError("schema: empty label column name");
    }
    if (seen.contains(label_column)) {
        throw ContractError("schema: label column '" + label_column + "' is also a feature");
    }
}

void Dataset::validate() const {
    schema.validate();
    if (X.rows() < 1) {
        throw ContractError("dataset: no rows");
    }
    if (X.cols() != schema.dimension()) {
        throw ContractError("dataset: matrix has " + std::to_string(X.cols()) +
                            " columns, schema has " + std::to_string(schema.dimension()));
    }
    if (static_cast<Index>(y.size()) != X.rows()) {
        throw ContractError("dataset: label count differs from row count");
    }
    for (const int label : y) {
        if (label < 0 || label >= class_count()) {
            throw ContractError("dataset: label index " + std::to_string(label) + " out of range");
        }
    }
    if (!X.allFinite()) {
        throw ContractError("dataset: non-finite feature value");
    }
}

Dataset Dataset::subset(const std::vector<Index>& rows) const {
    Dataset out;
    out.schema = schema;
    out.class_names = class_names;
    out.X.resize(static_cast<Index>(rows.size()), X.cols());
    out.y.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.X.row(static_cast<Index>(i)) = X.row(rows[i]);
        out.y.push_back(y[static_cast<std::size_t>(rows[i])]);
    }
    return out;
}

ClassStats class_stats(const Dataset& ds) {
    ClassStats s;
    s.counts.assign(static_cast<std::size_t>(ds.class_count()), 0);
    for (const int label : ds.y) {
        ++s.counts[static_cast<std::size_t>(label)];
    }
    s.majority = s.counts.empty() ? 0 : *std::max_element(s.counts.begin(), s.counts.end());
    s.ratios.reserve(s.counts.size());
    for (const Index c : s.counts) {
        s.ratios.push_back(s.majority > 0 ? static_cast<double>(c) / static_cast<double>(s.majority) : 0.0);
    }
    return s;
}

Matrix one_hot(const std::vector<int>& labels, int classes) {
    Matrix m = Matrix::Zero(static_cast<Index>(labels.size()), classes);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        m(static_cast<Index>(i), labels[i]) = 1.0;
    }
    return m;
}

int find_class(const Dataset& ds, const std::string& name) {
    const auto it = std::find(ds.class_names.begin(), ds.class_names.end(), name);
    return it == ds.class_names.end() ? -1 : static_cast<int>(it - ds.class_names.begin());
}

Dataset align_classes(const Dataset& ds, const std::vector<std::string>& reference_names) {
    std::unordered_map<std::string, int> ref;
    for (std::size_t c = 0; c < reference_names.size(); ++c) {
        ref.emplace(reference_names[c], static_cast<int>(c));
    }
    if (ref.size() != ds.class_names.size()) {
        throw ContractError("class sets differ: " + std::to_string(ds.class_names.size()) + " vs " +
                            std::to_string(reference_names.size()) + " classes");
    }
    std::vector<int> map(ds.class_names.size());
    for (std::size_t c = 0; c < ds.class_names.size(); ++c) {
        const auto it = ref.find(ds.class_names[c]);
        if (it == ref.end()) {
            throw ContractError("class '" + ds.class_names[c] + "' missing from reference class set");
        }
        map[c] = it->second;
    }
    Dataset out = ds;
    out.class_names = reference_names;
    for (int& label : out.y) {
        label = map[static_cast<std::size_t>(label)];
    }
    return out;
}

std::pair<Dataset, Dataset> split(const Dataset& ds, double test_fraction, std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw ContractError("split: test fraction must be in (0, 1)");
    }
    SeededRng rng(seed);
    auto perm = rng.permutation(ds.rows());
    const auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(ds.rows())));
    std::vector<Index> test(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_test));
    std::vector<Index> train(perm.begin() + static_cast<std::ptrdiff_t>(n_test), perm.end());
    std::sort(test.begin(), test.end());
    std::sort(train.begin(), train.end());
    return {ds.subset(train), ds.subset(test)};
}

} // namespace f2gan
