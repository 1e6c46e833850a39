#include "f2gan/genmodels/networks.hpp"

#include "f2gan/errors.hpp"

namespace f2gan {
namespace {

Matrix concat_condition(const Matrix& X, const std::vector<int>& labels, int classes) {
    if (static_cast<Index>(labels.size()) != X.rows()) {
        throw DimensionError("conditioning: " + std::to_string(labels.size()) + " labels for " +
                             std::to_string(X.rows()) + " rows");
    }
    Matrix in = Matrix::Zero(X.rows(), X.cols() + classes);
    in.leftCols(X.cols()) = X;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 0 || labels[i] >= classes) {
            throw ContractError("conditioning: label " + std::to_string(labels[i]) + " out of range");
        }
        in(static_cast<Index>(i), X.cols() + labels[i]) = 1.0;
    }
    return in;
}

} // namespace

ForwardPass<double> GeneratorModel::forward(const Matrix& Z, const std::vector<int>& labels) const {
    return mlp_forward(params, spec, concat_condition(Z, labels, classes));
}

ForwardPass<double> DiscriminatorModel::forward(const Matrix& X, const std::vector<int>& labels) const {
    return mlp_forward(params, spec, concat_condition(X, labels, classes));
}

GeneratorModel make_generator(const GanConfig& config, Index data_dim, int classes, SeededRng& rng) {
    GeneratorModel g;
    g.latent_dim = config.latent_dim;
    g.classes = classes;
    g.spec.layer_sizes.push_back(config.latent_dim + classes);
    g.spec.layer_sizes.insert(g.spec.layer_sizes.end(), config.gen_hidden.begin(), config.gen_hidden.end());
    g.spec.layer_sizes.push_back(data_dim);
    g.spec.leaky_slope = config.leaky_slope;
    g.spec.output = OutputActivation::tanh;
    g.params = mlp_init(g.spec, rng);
    return g;
}

DiscriminatorModel make_discriminator(const GanConfig& config, Index data_dim, int classes, SeededRng& rng) {
    DiscriminatorModel d;
    d.classes = classes;
    d.spec.layer_sizes.push_back(data_dim + classes);
    d.spec.layer_sizes.insert(d.spec.layer_sizes.end(), config.disc_hidden.begin(), config.disc_hidden.end());
    d.spec.layer_sizes.push_back(1);
    d.spec.leaky_slope = config.leaky_slope;
    // Logit (or critic score); the sigmoid lives inside the log-space losses.
    d.spec.output = OutputActivation::linear;
    d.params = mlp_init(d.spec, rng);
    return d;
}

} // namespace f2gan
