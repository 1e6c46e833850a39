#pragma once

#include <utility>

#include "f2gan/numerics/mlp.hpp"

namespace f2gan {

/// Central-difference gradient of `loss` at `params`:
/// (f(theta + h e_i) - f(theta - h e_i)) / 2h for every coefficient i.
/// Works for MlpParams and for plain Eigen vectors/matrices.
template <typename Params, typename Loss>
Params finite_diff_gradient(Loss&& loss, Params params, double h) {
    Params grad = params;
    std::vector<double*> probe;
    std::vector<double*> out;
    for_each_coefficient(params, [&](double& c) { probe.push_back(&c); });
    for_each_coefficient(grad, [&](double& c) { out.push_back(&c); });
    for (std::size_t i = 0; i < probe.size(); ++i) {
        const double saved = *probe[i];
        *probe[i] = saved + h;
        const double plus = loss(std::as_const(params));
        *probe[i] = saved - h;
        const double minus = loss(std::as_const(params));
        *probe[i] = saved;
        *out[i] = (plus - minus) / (2.0 * h);
    }
    return grad;
}

} // namespace f2gan
