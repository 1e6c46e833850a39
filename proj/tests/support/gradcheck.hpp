#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "f2gan/numerics/mlp.hpp"

namespace gradcheck {

// Max over coefficients of |a - b| / max(|a|, |b|, floor).
template <typename P>
double max_relative_error(P a, P b, double floor = 1e-3) {
    std::vector<double> va, vb;
    f2gan::for_each_coefficient(a, [&](double& c) { va.push_back(c); });
    f2gan::for_each_coefficient(b, [&](double& c) { vb.push_back(c); });
    double worst = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) {
        const double scale = std::max({std::abs(va[i]), std::abs(vb[i]), floor});
        worst = std::max(worst, std::abs(va[i] - vb[i]) / scale);
    }
    return worst;
}

} // namespace gradcheck
