#include "f2gan/fidelity/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "f2gan/errors.hpp"
#include "f2gan/numerics/statistics.hpp"

namespace f2gan {
namespace {

std::vector<double> sorted_copy(std::span<const double> v, const char* what) {
    if (v.empty()) {
        throw ContractError(std::string(what) + ": empty sample");
    }
    std::vector<double> s(v.begin(), v.end());
    std::sort(s.begin(), s.end());
    return s;
}

// Walks the merged sorted support; calls f(x, next_x, F_a, F_b) where the
// CDF values hold on [x, next_x).
template <typename F>
void sweep(const std::vector<double>& a, const std::vector<double>& b, F&& f) {
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        double x;
        if (j >= b.size() || (i < a.size() && a[i] <= b[j])) {
            x = a[i];
        } else {
            x = b[j];
        }
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        const double fa = static_cast<double>(i) / na;
        const double fb = static_cast<double>(j) / nb;
        double next = x;
        if (i < a.size() && j < b.size()) {
            next = std::min(a[i], b[j]);
        } else if (i < a.size()) {
            next = a[i];
        } else if (j < b.size()) {
            next = b[j];
        }
        f(x, next, fa, fb);
    }
}

} // namespace

double wasserstein_1d(std::span<const double> a, std::span<const double> b) {
    const auto sa = sorted_copy(a, "wasserstein_1d");
    const auto sb = sorted_copy(b, "wasserstein_1d");
    if (sa.size() == sb.size()) {
        double sum = 0.0;
        for (std::size_t k = 0; k < sa.size(); ++k) {
            sum += std::abs(sa[k] - sb[k]);
        }
        return sum / static_cast<double>(sa.size());
    }
    double total = 0.0;
    sweep(sa, sb, [&](double x, double next, double fa, double fb) { total += std::abs(fa - fb) * (next - x); });
    return total;
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
    const auto sa = sorted_copy(a, "ks_statistic");
    const auto sb = sorted_copy(b, "ks_statistic");
    double sup = 0.0;
    sweep(sa, sb, [&](double, double, double fa, double fb) { sup = std::max(sup, std::abs(fa - fb)); });
    return sup;
}

double median_heuristic_sigma(const Matrix& A, const Matrix& B, Index max_points) {
    const Index total = A.rows() + B.rows();
    const Index stride = std::max<Index>(1, (total + max_points - 1) / max_points);
    std::vector<Index> pick;
    for (Index k = 0; k < total; k += stride) pick.push_back(k);
    auto row = [&](Index k) { return k < A.rows() ? A.row(k) : B.row(k - A.rows()); };
    std::vector<double> dist;
    dist.reserve(pick.size() * (pick.size() - 1) / 2);
    for (std::size_t p = 0; p < pick.size(); ++p) {
        for (std::size_t q = p + 1; q < pick.size(); ++q) {
            dist.push_back((row(pick[p]) - row(pick[q])).norm());
        }
    }
    if (dist.empty()) {
        return 1.0;
    }
    const auto mid = dist.begin() + static_cast<std::ptrdiff_t>(dist.size() / 2);
    std::nth_element(dist.begin(), mid, dist.end());
    double median = *mid;
    if (dist.size() % 2 == 0) {
        median = 0.5 * (median + *std::max_element(dist.begin(), mid));
    }
    return median > 0.0 ? median : 1.0;
}

namespace {

double mean_kernel(const Matrix& P, const Matrix& Q, double inv_sigma2) {
    const Vector p2 = P.rowwise().squaredNorm();
    const Vector q2 = Q.rowwise().squaredNorm();
    double sum = 0.0;
    constexpr Index block = 512;
    for (Index start = 0; start < P.rows(); start += block) {
        const Index rows = std::min(block, P.rows() - start);
        Matrix d2 = -2.0 * P.middleRows(start, rows) * Q.transpose();
        d2.colwise() += p2.segment(start, rows);
        d2.rowwise() += q2.transpose();
        sum += (-(d2.array().max(0.0)) * inv_sigma2).exp().sum();
    }
    return sum / (static_cast<double>(P.rows()) * static_cast<double>(Q.rows()));
}

} // namespace

double mmd_gaussian(const Matrix& A, const Matrix& B, std::optional<double> sigma) {
    if (A.cols() != B.cols()) {
        throw ContractError("mmd_gaussian: feature dimensions differ");
    }
    if (A.rows() < 1 || B.rows() < 1) {
        throw ContractError("mmd_gaussian: empty sample");
    }
    const double s = sigma.value_or(median_heuristic_sigma(A, B));
    if (!(s > 0.0) || !std::isfinite(s)) {
        throw ContractError("mmd_gaussian: sigma must be positive");
    }
    const double inv = 1.0 / (s * s);
    const double mmd2 = mean_kernel(A, A, inv) + mean_kernel(B, B, inv) - 2.0 * mean_kernel(A, B, inv);
    return std::max(mmd2, 0.0);
}

double delta_stat(const Matrix& X_r, const Matrix& X_g) {
    if (X_r.cols() != X_g.cols()) {
        throw ContractError("delta_stat: feature dimensions differ");
    }
    if (X_r.rows() < 2 || X_g.rows() < 2) {
        throw ContractError("delta_stat: at least two rows required in each matrix");
    }
    const RowVector dmean = X_r.colwise().mean() - X_g.colwise().mean();
    const RowVector dvar = column_variance(X_r) - column_variance(X_g);
    return dmean.squaredNorm() + dvar.squaredNorm() +
           (pearson_correlation(X_r) - pearson_correlation(X_g)).squaredNorm();
}

} // namespace f2gan
