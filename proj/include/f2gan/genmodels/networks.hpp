#pragma once

#include <string>
#include <vector>

#include "f2gan/data/dataset.hpp"
#include "f2gan/data/scaler.hpp"
#include "f2gan/genmodels/config.hpp"
#include "f2gan/numerics/mlp.hpp"

namespace f2gan {

/// G(z, y): [latent ++ one-hot(y)] -> hidden... -> d, tanh output.
struct GeneratorModel {
    MlpSpec spec;
    MlpParams<double> params;
    Index latent_dim = 0;
    int classes = 0;

    Index output_dim() const { return spec.output_size(); }

    /// Forward pass on latent rows Z conditioned on labels.
    ForwardPass<double> forward(const Matrix& Z, const std::vector<int>& labels) const;
};

/// D(x, y): trunk over [x ++ one-hot(y)] whose last hidden activation is the
/// feature embedding f(x); a single linear unit on top gives the real/fake
/// logit (or the critic score for WGAN-GP).
struct DiscriminatorModel {
    MlpSpec spec;
    MlpParams<double> params;
    int classes = 0;

    Index input_dim() const { return spec.input_size() - classes; }
    Index feature_dim() const { return spec.layer_sizes[spec.layer_sizes.size() - 2]; }

    ForwardPass<double> forward(const Matrix& X, const std::vector<int>& labels) const;
};

GeneratorModel make_generator(const GanConfig& config, Index data_dim, int classes, SeededRng& rng);
DiscriminatorModel make_discriminator(const GanConfig& config, Index data_dim, int classes, SeededRng& rng);

struct EpochLosses {
    Index epoch = 0;  // 1-based
    double loss_d = 0.0;
    double loss_adv = 0.0;
    double loss_mv = 0.0;
    double loss_corr = 0.0;
    double loss_g = 0.0;

    bool operator==(const EpochLosses&) const = default;
};

using TrainingLog = std::vector<EpochLosses>;

struct TrainedGan {
    GanConfig config;
    FeatureSchema schema;
    std::vector<std::string> class_names;
    ScalerParams scaler;
    GeneratorModel generator;
    DiscriminatorModel discriminator;
    TrainingLog log;
};

} // namespace f2gan
