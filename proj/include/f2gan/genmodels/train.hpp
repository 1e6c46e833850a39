#pragma once

#include <functional>
#include <vector>

#include "f2gan/data/dataset.hpp"
#include "f2gan/data/scaler.hpp"
#include "f2gan/genmodels/config.hpp"
#include "f2gan/genmodels/networks.hpp"

namespace f2gan {

// Single-step gradient computations. Each takes its noise explicitly so the
// step is a pure function of (networks, batch, noise, config); the training
// loop and the gradient checks call the same code.

struct DiscriminatorStep {
    double loss = 0.0;
    MlpParams<double> grads;
};

/// Discriminator step: fakes X_f = G(Z, y), loss per discriminator_loss.
DiscriminatorStep discriminator_step(const GeneratorModel& g, const DiscriminatorModel& d,
                                     const Matrix& X_real, const std::vector<int>& y,
                                     const Matrix& Z, const GanConfig& config);

struct CriticStep {
    double loss = 0.0;
    double penalty = 0.0;
    MlpParams<double> grads;
};

/// WGAN-GP critic step. `mix` holds one interpolation weight u per row:
/// x_hat = u x_real + (1 - u) x_fake.
CriticStep critic_step(const GeneratorModel& g, const DiscriminatorModel& d, const Matrix& X_real,
                       const std::vector<int>& y, const Matrix& Z, const Vector& mix,
                       const GanConfig& config);

struct GeneratorStep {
    double adv = 0.0;
    double mv = 0.0;
    double corr = 0.0;
    double total = 0.0;
    MlpParams<double> grads;
};

/// Generator step: fakes X'_f = G(Z', y); the discriminator supplies the
/// logit and feature embedding F_g for the fakes and F_r for X_real (held
/// constant). The feedback terms are always evaluated; they enter the
/// gradient only for the f2gan variant.
GeneratorStep generator_step(const GeneratorModel& g, const DiscriminatorModel& d,
                             const Matrix& X_real, const std::vector<int>& y, const Matrix& Z,
                             const GanConfig& config);

enum class Network { generator, discriminator };

/// Reported once per optimizer update.
struct StepEvent {
    Network network = Network::generator;
    Index epoch = 0;  // 1-based
    Index batch = 0;  // 0-based within the epoch
    double norm_before_clip = 0.0;
    double norm_after_clip = 0.0;
};

struct TrainOptions {
    std::function<void(const StepEvent&)> on_step;
    std::function<void(const EpochLosses&)> on_epoch;
};

/// Runs the full training loop on a dataset already scaled with `scaler`.
/// Every class needs at least two samples. A trailing batch with a single row
/// is skipped (feature statistics need two).
TrainedGan train(const Dataset& scaled, const ScalerParams& scaler, const GanConfig& config,
                 const TrainOptions& options = {});

/// Fits the scaler on `raw`, scales and trains.
TrainedGan train(const Dataset& raw, const GanConfig& config, const TrainOptions& options = {});

/// Exactly `per_class` rows per class, in class order, in original units and
/// clamped to the scaler's range.
Dataset synthesize_balanced(const TrainedGan& model, Index per_class, std::uint64_t seed);

} // namespace f2gan
