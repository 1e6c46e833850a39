#pragma once

#include "f2gan/numerics/types.hpp"

namespace f2gan {

/// Standard deviations below this are treated as zero by the correlation
/// statistics (the column gets an identity row/column).
inline constexpr double kDegenerateStd = 1e-8;

/// Per-column population variance.
RowVector column_variance(const Matrix& X);

/// Pearson correlation matrix across columns (population moments). Columns
/// with std < kDegenerateStd have 0 off-diagonal and 1 on the diagonal.
Matrix pearson_correlation(const Matrix& X);

} // namespace f2gan
