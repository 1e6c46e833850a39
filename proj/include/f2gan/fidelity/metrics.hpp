#pragma once

#include <optional>
#include <span>

#include "f2gan/numerics/types.hpp"

namespace f2gan {

/// Exact Wasserstein-1 distance between two empirical distributions on the
/// line: the integral of |F_a - F_b| over the merged support.
double wasserstein_1d(std::span<const double> a, std::span<const double> b);

/// sup_x |F_a(x) - F_b(x)| with right-continuous empirical CDFs.
double ks_statistic(std::span<const double> a, std::span<const double> b);

/// Median of pairwise Euclidean distances over the pooled rows of A and B.
/// Pools larger than `max_points` are thinned with a fixed stride (no RNG).
/// Returns 1.0 when the median is zero.
double median_heuristic_sigma(const Matrix& A, const Matrix& B, Index max_points = 1000);

/// Biased (V-statistic) estimate of MMD^2 with k(x, y) = exp(-||x - y||^2 / sigma^2),
/// all pairs including the diagonal. `sigma` defaults to the median heuristic.
double mmd_gaussian(const Matrix& A, const Matrix& B, std::optional<double> sigma = std::nullopt);

/// ||mu_r - mu_g||^2 + ||var_r - var_g||^2 + ||rho_r - rho_g||_F^2 with
/// population moments and Pearson correlations.
double delta_stat(const Matrix& X_r, const Matrix& X_g);

} // namespace f2gan
