#pragma once

#include <cmath>

#include "f2gan/errors.hpp"
#include "f2gan/numerics/mlp.hpp"

namespace f2gan {

template <typename Scalar>
struct InputGradientPenalty {
    Scalar value = 0;              // mean over rows of (||grad_x f|| - 1)^2
    VectorX<Scalar> norms;         // ||grad_x f|| per row
    MlpParams<Scalar> grads;       // d value / d params
};

/// Gradient-norm penalty of a scalar-output network with respect to the first
/// `penalized_cols` input columns, together with its parameter gradient.
///
/// The network must be piecewise linear in its input (leaky-rectified hidden
/// layers, linear output), so the input gradient is the product
/// W_0^T D_0 W_1^T ... W_{L-1}^T with D_k the fixed activation-slope masks;
/// differentiating that product gives the parameter gradient directly. Biases
/// only enter through the masks and therefore have zero gradient almost
/// everywhere.
template <typename Scalar>
InputGradientPenalty<Scalar> input_gradient_penalty(const MlpParams<Scalar>& params,
                                                    const MlpSpec& spec,
                                                    const MlpCache<Scalar>& cache,
                                                    Index penalized_cols) {
    detail::check_params(params, spec);
    if (spec.output != OutputActivation::linear || spec.output_size() != 1) {
        throw ContractError("input_gradient_penalty: network must have one linear output");
    }
    if (penalized_cols < 1 || penalized_cols > spec.input_size()) {
        throw ContractError("input_gradient_penalty: penalized column count out of range");
    }
    const std::size_t n = params.layers.size();
    if (cache.pre.size() != n) {
        throw ContractError("input_gradient_penalty: cache does not match network");
    }
    const Index batch = cache.output.rows();
    const Scalar slope = static_cast<Scalar>(spec.leaky_slope);

    // masks[k] = activation slope of hidden layer k, per row.
    std::vector<MatrixX<Scalar>> masks(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        masks[k] = cache.pre[k].unaryExpr([slope](Scalar v) { return v > 0 ? Scalar(1) : slope; });
    }

    // Forward through the Jacobian chain. r[k] = d out / d(input of layer k),
    // q[k] = d out / d(pre-activation of layer k) for hidden k.
    std::vector<MatrixX<Scalar>> r(n);
    std::vector<MatrixX<Scalar>> q(n);
    r[n - 1] = MatrixX<Scalar>::Ones(batch, 1) * params.layers[n - 1].weight;
    for (std::size_t k = n - 1; k-- > 0;) {
        q[k] = r[k + 1].cwiseProduct(masks[k]);
        r[k] = q[k] * params.layers[k].weight;
    }

    InputGradientPenalty<Scalar> out;
    out.norms.resize(batch);
    MatrixX<Scalar> s = MatrixX<Scalar>::Zero(batch, spec.input_size());
    const Scalar inv_batch = Scalar(1) / static_cast<Scalar>(batch);
    for (Index i = 0; i < batch; ++i) {
        const auto g = r[0].row(i).head(penalized_cols);
        const Scalar norm = g.norm();
        out.norms(i) = norm;
        out.value += (norm - 1) * (norm - 1) * inv_batch;
        if (norm > 0) {
            s.row(i).head(penalized_cols) = (Scalar(2) * inv_batch * (norm - 1) / norm) * g;
        }
    }

    // Reverse through the chain.
    out.grads = params.zeros_like();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        out.grads.layers[k].weight = q[k].transpose() * s;
        s = (s * params.layers[k].weight.transpose()).cwiseProduct(masks[k]);
    }
    out.grads.layers[n - 1].weight = s.colwise().sum();
    return out;
}

} // namespace f2gan
