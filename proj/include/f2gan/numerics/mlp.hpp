#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>
#include <vector>

#include "f2gan/errors.hpp"
#include "f2gan/numerics/rng.hpp"
#include "f2gan/numerics/types.hpp"

namespace f2gan {

enum class OutputActivation { tanh, sigmoid, linear, softmax };

std::string to_string(OutputActivation a);
OutputActivation output_activation_from_string(const std::string& name);

/// Fully connected network shape. Hidden layers are leaky-rectified.
struct MlpSpec {
    std::vector<Index> layer_sizes;  // input, hidden..., output
    double leaky_slope = 0.2;
    OutputActivation output = OutputActivation::linear;

    std::size_t layer_count() const { return layer_sizes.size() - 1; }
    Index input_size() const { return layer_sizes.front(); }
    Index output_size() const { return layer_sizes.back(); }

    void validate() const;

    bool operator==(const MlpSpec&) const = default;
};

template <typename Scalar>
struct DenseLayer {
    MatrixX<Scalar> weight;  // out x in
    VectorX<Scalar> bias;    // out
};

/// Parameters of an MLP; the same type carries gradients and optimizer moments.
template <typename Scalar>
struct MlpParams {
    std::vector<DenseLayer<Scalar>> layers;

    Index parameter_count() const {
        Index n = 0;
        for (const auto& l : layers) {
            n += l.weight.size() + l.bias.size();
        }
        return n;
    }

    MlpParams zeros_like() const {
        MlpParams z;
        z.layers.reserve(layers.size());
        for (const auto& l : layers) {
            z.layers.push_back({MatrixX<Scalar>::Zero(l.weight.rows(), l.weight.cols()),
                                VectorX<Scalar>::Zero(l.bias.size())});
        }
        return z;
    }

    bool same_shape(const MlpParams& other) const {
        if (layers.size() != other.layers.size()) {
            return false;
        }
        for (std::size_t k = 0; k < layers.size(); ++k) {
            if (layers[k].weight.rows() != other.layers[k].weight.rows() ||
                layers[k].weight.cols() != other.layers[k].weight.cols() ||
                layers[k].bias.size() != other.layers[k].bias.size()) {
                return false;
            }
        }
        return true;
    }

    bool all_finite() const {
        for (const auto& l : layers) {
            if (!l.weight.allFinite() || !l.bias.allFinite()) {
                return false;
            }
        }
        return true;
    }

    MlpParams& operator+=(const MlpParams& other) {
        for (std::size_t k = 0; k < layers.size(); ++k) {
            layers[k].weight += other.layers[k].weight;
            layers[k].bias += other.layers[k].bias;
        }
        return *this;
    }

    MlpParams& operator*=(Scalar s) {
        for (auto& l : layers) {
            l.weight *= s;
            l.bias *= s;
        }
        return *this;
    }
};

/// Visit every scalar of a parameter set in a fixed order (layer, weight
/// row-major, then bias).
template <typename Scalar, typename F>
void for_each_coefficient(MlpParams<Scalar>& params, F&& f) {
    for (auto& l : params.layers) {
        for (Index i = 0; i < l.weight.size(); ++i) {
            f(l.weight.data()[i]);
        }
        for (Index i = 0; i < l.bias.size(); ++i) {
            f(l.bias.data()[i]);
        }
    }
}

template <typename Derived, typename F>
void for_each_coefficient(Eigen::PlainObjectBase<Derived>& m, F&& f) {
    for (Index i = 0; i < m.size(); ++i) {
        f(m.data()[i]);
    }
}

template <typename Scalar>
Scalar squared_norm(const MlpParams<Scalar>& p) {
    Scalar s = 0;
    for (const auto& l : p.layers) {
        s += l.weight.squaredNorm() + l.bias.squaredNorm();
    }
    return s;
}

/// Activations recorded by mlp_forward. inputs[k] is what layer k consumed
/// (inputs[0] is the network input); pre[k] is W_k x + b_k.
template <typename Scalar>
struct MlpCache {
    std::vector<MatrixX<Scalar>> inputs;
    std::vector<MatrixX<Scalar>> pre;
    MatrixX<Scalar> output;

    /// Post-activation of the last hidden layer (the discriminator's feature
    /// embedding). Requires at least one hidden layer.
    const MatrixX<Scalar>& last_hidden() const { return inputs.back(); }
};

template <typename Scalar>
struct ForwardPass {
    MatrixX<Scalar> output;
    MlpCache<Scalar> cache;
};

template <typename Scalar>
struct BackwardPass {
    MlpParams<Scalar> grads;
    MatrixX<Scalar> input_grad;
};

namespace detail {

template <typename Scalar>
Scalar stable_sigmoid(Scalar x) {
    if (x >= 0) {
        return Scalar(1) / (Scalar(1) + std::exp(-x));
    }
    const Scalar e = std::exp(x);
    return e / (Scalar(1) + e);
}

template <typename Scalar>
void check_params(const MlpParams<Scalar>& params, const MlpSpec& spec) {
    if (params.layers.size() != spec.layer_count()) {
        throw DimensionError("mlp: parameter set has " + std::to_string(params.layers.size()) +
                             " layers, spec has " + std::to_string(spec.layer_count()));
    }
    for (std::size_t k = 0; k < params.layers.size(); ++k) {
        const auto& l = params.layers[k];
        if (l.weight.rows() != spec.layer_sizes[k + 1] || l.weight.cols() != spec.layer_sizes[k] ||
            l.bias.size() != spec.layer_sizes[k + 1]) {
            throw DimensionError("mlp: layer " + std::to_string(k) + " parameters are " +
                                 std::to_string(l.weight.rows()) + "x" +
                                 std::to_string(l.weight.cols()) + ", spec expects " +
                                 std::to_string(spec.layer_sizes[k + 1]) + "x" +
                                 std::to_string(spec.layer_sizes[k]));
        }
    }
}

template <typename Scalar>
MatrixX<Scalar> apply_output(const MatrixX<Scalar>& z, OutputActivation act) {
    switch (act) {
    case OutputActivation::linear:
        return z;
    case OutputActivation::tanh:
        return z.array().tanh().matrix();
    case OutputActivation::sigmoid:
        return z.unaryExpr([](Scalar v) { return stable_sigmoid(v); });
    case OutputActivation::softmax: {
        MatrixX<Scalar> out(z.rows(), z.cols());
        for (Index i = 0; i < z.rows(); ++i) {
            const Scalar m = z.row(i).maxCoeff();
            out.row(i) = (z.row(i).array() - m).exp().matrix();
            out.row(i) /= out.row(i).sum();
        }
        return out;
    }
    }
    return z;
}

// Gradient w.r.t. the pre-activation given the gradient w.r.t. the output.
template <typename Scalar>
MatrixX<Scalar> output_backward(const MatrixX<Scalar>& out, const MatrixX<Scalar>& grad,
                                OutputActivation act) {
    switch (act) {
    case OutputActivation::linear:
        return grad;
    case OutputActivation::tanh:
        return (grad.array() * (Scalar(1) - out.array().square())).matrix();
    case OutputActivation::sigmoid:
        return (grad.array() * out.array() * (Scalar(1) - out.array())).matrix();
    case OutputActivation::softmax: {
        MatrixX<Scalar> dz(out.rows(), out.cols());
        for (Index i = 0; i < out.rows(); ++i) {
            const Scalar dot = grad.row(i).dot(out.row(i));
            dz.row(i) = (out.row(i).array() * (grad.row(i).array() - dot)).matrix();
        }
        return dz;
    }
    }
    return grad;
}

} // namespace detail

/// Glorot-uniform weights, zero biases. Draw order: layer by layer, weights
/// row-major.
template <typename Scalar = double>
MlpParams<Scalar> mlp_init(const MlpSpec& spec, SeededRng& rng) {
    spec.validate();
    MlpParams<Scalar> p;
    for (std::size_t k = 0; k < spec.layer_count(); ++k) {
        const Index in = spec.layer_sizes[k];
        const Index out = spec.layer_sizes[k + 1];
        const double limit = std::sqrt(6.0 / static_cast<double>(in + out));
        DenseLayer<Scalar> l{MatrixX<Scalar>(out, in), VectorX<Scalar>::Zero(out)};
        for (Index i = 0; i < l.weight.size(); ++i) {
            l.weight.data()[i] = static_cast<Scalar>(rng.uniform(-limit, limit));
        }
        p.layers.push_back(std::move(l));
    }
    return p;
}

template <typename Scalar>
ForwardPass<Scalar> mlp_forward(const MlpParams<Scalar>& params, const MlpSpec& spec,
                                const std::type_identity_t<MatrixX<Scalar>>& input) {
    detail::check_params(params, spec);
    if (input.cols() != spec.input_size()) {
        throw DimensionError("mlp: layer 0 expects input width " +
                             std::to_string(spec.input_size()) + ", got " +
                             std::to_string(input.cols()));
    }
    const std::size_t n = params.layers.size();
    ForwardPass<Scalar> fp;
    fp.cache.inputs.reserve(n);
    fp.cache.pre.reserve(n);
    MatrixX<Scalar> x = input;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& l = params.layers[k];
        MatrixX<Scalar> z = x * l.weight.transpose();
        z.rowwise() += l.bias.transpose();
        fp.cache.inputs.push_back(std::move(x));
        if (k + 1 < n) {
            const Scalar slope = static_cast<Scalar>(spec.leaky_slope);
            x = z.unaryExpr([slope](Scalar v) { return v > 0 ? v : slope * v; });
        } else {
            x = detail::apply_output(z, spec.output);
        }
        fp.cache.pre.push_back(std::move(z));
    }
    fp.cache.output = x;
    fp.output = std::move(x);
    return fp;
}

/// Reverse pass. `hidden_grad`, when given, is an additional gradient with
/// respect to the last hidden activation (cache.last_hidden()), so losses
/// defined on the feature embedding can share one backward sweep with the
/// output loss.
template <typename Scalar>
BackwardPass<Scalar> mlp_backward(const MlpParams<Scalar>& params, const MlpSpec& spec,
                                  const MlpCache<Scalar>& cache,
                                  const std::type_identity_t<MatrixX<Scalar>>& output_grad,
                                  const std::type_identity_t<MatrixX<Scalar>>* hidden_grad = nullptr) {
    detail::check_params(params, spec);
    const std::size_t n = params.layers.size();
    if (cache.inputs.size() != n || cache.pre.size() != n) {
        throw ContractError("mlp_backward: cache holds " + std::to_string(cache.inputs.size()) +
                            " layers, network has " + std::to_string(n));
    }
    const Index batch = cache.output.rows();
    for (std::size_t k = 0; k < n; ++k) {
        if (cache.inputs[k].cols() != spec.layer_sizes[k] || cache.inputs[k].rows() != batch ||
            cache.pre[k].cols() != spec.layer_sizes[k + 1] || cache.pre[k].rows() != batch) {
            throw ContractError("mlp_backward: cache does not match network at layer " +
                                std::to_string(k));
        }
    }
    if (output_grad.rows() != batch || output_grad.cols() != spec.output_size()) {
        throw DimensionError("mlp_backward: output gradient is " +
                             std::to_string(output_grad.rows()) + "x" +
                             std::to_string(output_grad.cols()) + ", expected " +
                             std::to_string(batch) + "x" + std::to_string(spec.output_size()));
    }
    if (hidden_grad != nullptr) {
        if (n < 2) {
            throw ContractError("mlp_backward: hidden gradient given for a network without hidden layers");
        }
        if (hidden_grad->rows() != batch || hidden_grad->cols() != spec.layer_sizes[n - 1]) {
            throw DimensionError("mlp_backward: hidden gradient shape mismatch at layer " +
                                 std::to_string(n - 1));
        }
    }

    BackwardPass<Scalar> bp;
    bp.grads.layers.resize(n);
    MatrixX<Scalar> delta = detail::output_backward(cache.output, output_grad, spec.output);
    const Scalar slope = static_cast<Scalar>(spec.leaky_slope);
    for (std::size_t k = n; k-- > 0;) {
        const auto& l = params.layers[k];
        bp.grads.layers[k].weight = delta.transpose() * cache.inputs[k];
        bp.grads.layers[k].bias = delta.colwise().sum().transpose();
        MatrixX<Scalar> upstream = delta * l.weight;
        if (k == 0) {
            bp.input_grad = std::move(upstream);
            break;
        }
        if (k == n - 1 && hidden_grad != nullptr) {
            upstream += *hidden_grad;
        }
        const auto& z = cache.pre[k - 1];
        delta = upstream.binaryExpr(z, [slope](Scalar g, Scalar v) { return v > 0 ? g : slope * g; });
    }
    return bp;
}

} // namespace f2gan
