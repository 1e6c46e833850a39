#pragma once

#include <cmath>
#include <limits>

#include "f2gan/errors.hpp"
#include "f2gan/numerics/mlp.hpp"

namespace f2gan {

template <typename Scalar>
Scalar global_norm(const MlpParams<Scalar>& grads) {
    return std::sqrt(squared_norm(grads));
}

/// Rescale so the L2 norm over every entry of the parameter set is at most
/// max_norm. Returns the norm before clipping.
template <typename Scalar>
Scalar clip_gradients(MlpParams<Scalar>& grads, Scalar max_norm) {
    if (!(max_norm > 0)) {
        throw ContractError("clip_gradients: threshold must be positive");
    }
    const Scalar norm = global_norm(grads);
    if (norm > max_norm) {
        grads *= max_norm / norm;
        // rounding can leave the rescaled norm an ulp above the bound
        while (global_norm(grads) > max_norm) {
            grads *= Scalar(1) - std::numeric_limits<Scalar>::epsilon();
        }
    }
    return norm;
}

} // namespace f2gan
