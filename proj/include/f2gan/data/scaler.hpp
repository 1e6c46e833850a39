#pragma once

#include "f2gan/data/dataset.hpp"

namespace f2gan {

/// Per-feature range used for the affine map to [-1, 1].
struct ScalerParams {
    Vector min;
    Vector max;

    Index dimension() const { return min.size(); }

    bool operator==(const ScalerParams& o) const { return min == o.min && max == o.max; }
};

ScalerParams fit_scaler(const Dataset& ds);

/// min -> -1, max -> +1; constant features map to 0.
Matrix apply_scale(const Matrix& X, const ScalerParams& sp);
Dataset apply_scale(const Dataset& ds, const ScalerParams& sp);

/// Exact affine inverse; constant features restore min.
Matrix inverse_scale(const Matrix& X, const ScalerParams& sp);
Dataset inverse_scale(const Dataset& ds, const ScalerParams& sp);

} // namespace f2gan
