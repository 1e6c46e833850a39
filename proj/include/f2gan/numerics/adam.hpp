#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "f2gan/errors.hpp"
#include "f2gan/numerics/mlp.hpp"

namespace f2gan {

struct AdamSettings {
    double learning_rate = 2e-4;
    double beta1 = 0.5;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    bool operator==(const AdamSettings&) const = default;
};

template <typename Scalar>
struct AdamState {
    AdamSettings settings;
    MlpParams<Scalar> first_moment;
    MlpParams<Scalar> second_moment;
    std::int64_t step = 0;

    AdamState() = default;
    AdamState(const MlpParams<Scalar>& like, AdamSettings s)
        : settings(s), first_moment(like.zeros_like()), second_moment(like.zeros_like()) {}
};

/// One bias-corrected adaptive-moment update, in place.
/// Throws NumericError (without touching params or state) if any gradient
/// entry is not finite.
template <typename Scalar>
void adam_step(MlpParams<Scalar>& params, const MlpParams<Scalar>& grads, AdamState<Scalar>& state) {
    if (!params.same_shape(grads) || !params.same_shape(state.first_moment) ||
        !params.same_shape(state.second_moment)) {
        throw DimensionError("adam_step: parameter, gradient and moment shapes differ");
    }
    for (std::size_t k = 0; k < grads.layers.size(); ++k) {
        if (!grads.layers[k].weight.allFinite() || !grads.layers[k].bias.allFinite()) {
            throw NumericError("adam_step: non-finite gradient in layer " + std::to_string(k));
        }
    }
    ++state.step;
    const auto& s = state.settings;
    const Scalar b1 = static_cast<Scalar>(s.beta1);
    const Scalar b2 = static_cast<Scalar>(s.beta2);
    const Scalar c1 = Scalar(1) - static_cast<Scalar>(std::pow(s.beta1, static_cast<double>(state.step)));
    const Scalar c2 = Scalar(1) - static_cast<Scalar>(std::pow(s.beta2, static_cast<double>(state.step)));
    const Scalar lr = static_cast<Scalar>(s.learning_rate);
    const Scalar eps = static_cast<Scalar>(s.epsilon);

    auto update = [&](auto& p, const auto& g, auto& m, auto& v) {
        m = b1 * m + (Scalar(1) - b1) * g;
        v.array() = b2 * v.array() + (Scalar(1) - b2) * g.array().square();
        p.array() -= lr * (m.array() / c1) / ((v.array() / c2).sqrt() + eps);
    };
    for (std::size_t k = 0; k < params.layers.size(); ++k) {
        update(params.layers[k].weight, grads.layers[k].weight, state.first_moment.layers[k].weight,
               state.second_moment.layers[k].weight);
        update(params.layers[k].bias, grads.layers[k].bias, state.first_moment.layers[k].bias,
               state.second_moment.layers[k].bias);
    }
}

} // namespace f2gan
