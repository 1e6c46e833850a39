#include "f2gan/numerics/mlp.hpp"

namespace f2gan {

std::string to_string(OutputActivation a) {
    switch (a) {
    case OutputActivation::tanh:
        return "tanh";
    case OutputActivation::sigmoid:
        return "sigmoid";
    case OutputActivation::linear:
        return "linear";
    case OutputActivation::softmax:
        return "softmax";
    }
    return "linear";
}

OutputActivation output_activation_from_string(const std::string& name) {
    if (name == "tanh") return OutputActivation::tanh;
    if (name == "sigmoid") return OutputActivation::sigmoid;
    if (name == "linear") return OutputActivation::linear;
    if (name == "softmax") return OutputActivation::softmax;
    throw ConfigError("unknown output activation '" + name + "'");
}

void MlpSpec::validate() const {
    if (layer_sizes.size() < 2) {
        throw ConfigError("mlp spec needs at least an input and an output size");
    }
    for (std::size_t k = 0; k < layer_sizes.size(); ++k) {
        if (layer_sizes[k] < 1) {
            throw ConfigError("mlp spec: layer size " + std::to_string(k) + " must be >= 1");
        }
    }
    if (!std::isfinite(leaky_slope)) {
        throw ConfigError("mlp spec: leaky slope must be finite");
    }
}

} // namespace f2gan
