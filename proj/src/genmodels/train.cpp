#include "f2gan/genmodels/train.hpp"

#include <cmath>
#include <string>

#include "f2gan/data/batching.hpp"
#include "f2gan/errors.hpp"
#include "f2gan/genmodels/losses.hpp"
#include "f2gan/numerics/adam.hpp"
#include "f2gan/numerics/clip.hpp"
#include "f2gan/numerics/input_gradient.hpp"

namespace f2gan {

DiscriminatorStep discriminator_step(const GeneratorModel& g, const DiscriminatorModel& d,
                                     const Matrix& X_real, const std::vector<int>& y,
                                     const Matrix& Z, const GanConfig& config) {
    const Matrix X_fake = g.forward(Z, y).output;
    const auto real = d.forward(X_real, y);
    const auto fake = d.forward(X_fake, y);
    const auto loss = discriminator_loss(real.output, fake.output, config.label_smoothing);

    DiscriminatorStep step;
    step.loss = loss.value;
    step.grads = mlp_backward(d.params, d.spec, real.cache, loss.real_grad).grads;
    step.grads += mlp_backward(d.params, d.spec, fake.cache, loss.fake_grad).grads;
    return step;
}

CriticStep critic_step(const GeneratorModel& g, const DiscriminatorModel& d, const Matrix& X_real,
                       const std::vector<int>& y, const Matrix& Z, const Vector& mix,
                       const GanConfig& config) {
    if (mix.size() != X_real.rows()) {
        throw DimensionError("critic_step: one interpolation weight per row required");
    }
    const Matrix X_fake = g.forward(Z, y).output;
    const auto real = d.forward(X_real, y);
    const auto fake = d.forward(X_fake, y);
    const Matrix X_hat = (X_real.array().colwise() * mix.array() +
                          X_fake.array().colwise() * (1.0 - mix.array()))
                             .matrix();
    const auto hat = d.forward(X_hat, y);
    auto penalty = input_gradient_penalty(d.params, d.spec, hat.cache, d.input_dim());

    CriticStep step;
    step.penalty = penalty.value;
    step.loss = wgan_gp_critic_loss(real.output, fake.output, penalty.norms, config.gp_weight);
    const Matrix real_grad = Matrix::Constant(real.output.rows(), 1, -1.0 / static_cast<double>(real.output.rows()));
    const Matrix fake_grad = Matrix::Constant(fake.output.rows(), 1, 1.0 / static_cast<double>(fake.output.rows()));
    step.grads = mlp_backward(d.params, d.spec, real.cache, real_grad).grads;
    step.grads += mlp_backward(d.params, d.spec, fake.cache, fake_grad).grads;
    penalty.grads *= config.gp_weight;
    step.grads += penalty.grads;
    return step;
}

GeneratorStep generator_step(const GeneratorModel& g, const DiscriminatorModel& d,
                             const Matrix& X_real, const std::vector<int>& y, const Matrix& Z,
                             const GanConfig& config) {
    const auto gen = g.forward(Z, y);
    const auto fake = d.forward(gen.output, y);
    const auto real = d.forward(X_real, y);
    const Matrix& F_g = fake.cache.last_hidden();
    const Matrix& F_r = real.cache.last_hidden();

    LossGrad adv;
    if (config.variant == GanVariant::wgan_gp) {
        const double n = static_cast<double>(fake.output.rows());
        adv.value = -fake.output.mean();
        adv.grad = Matrix::Constant(fake.output.rows(), 1, -1.0 / n);
    } else if (config.generator_loss == GeneratorLossForm::saturating) {
        adv = adversarial_loss_g(fake.output);
    } else {
        adv = adversarial_loss_g_non_saturating(fake.output);
    }
    const auto mv = mv_feedback(F_r, F_g);
    const auto corr = corr_feedback(F_r, F_g);

    const double lambda_mv = config.uses_feedback() ? config.lambda_mv : 0.0;
    const double lambda_corr = config.uses_feedback() ? config.lambda_corr : 0.0;

    GeneratorStep step;
    step.adv = adv.value;
    step.mv = mv.value;
    step.corr = corr.value;
    step.total = generator_loss(adv.value, mv.value, corr.value, lambda_mv, lambda_corr);

    Matrix feature_grad;
    const Matrix* hidden = nullptr;
    if (lambda_mv > 0.0 || lambda_corr > 0.0) {
        feature_grad = lambda_mv * mv.grad + lambda_corr * corr.grad;
        hidden = &feature_grad;
    }
    const auto through_d = mlp_backward(d.params, d.spec, fake.cache, adv.grad, hidden);
    const Matrix dX = through_d.input_grad.leftCols(g.output_dim());
    step.grads = mlp_backward(g.params, g.spec, gen.cache, dX).grads;
    return step;
}

namespace {

std::string where(Index epoch, Index batch) {
    return "epoch " + std::to_string(epoch) + ", batch " + std::to_string(batch);
}

void check_finite(double v, const char* what, Index epoch, Index batch) {
    if (!std::isfinite(v)) {
        throw NumericError("training diverged at " + where(epoch, batch) + ": non-finite " + what);
    }
}

// Clip, report and apply one update.
void update(Network net, MlpParams<double>& params, MlpParams<double>& grads, AdamState<double>& state,
            double clip, Index epoch, Index batch, const TrainOptions& options) {
    const double before = clip_gradients(grads, clip);
    if (options.on_step) {
        options.on_step({net, epoch, batch, before, global_norm(grads)});
    }
    try {
        adam_step(params, grads, state);
    } catch (const NumericError& e) {
        throw NumericError(std::string("training diverged at ") + where(epoch, batch) + " (" +
                           (net == Network::generator ? "generator" : "discriminator") + "): " + e.what());
    }
}

void check_trainable(const Dataset& ds) {
    ds.validate();
    const auto stats = class_stats(ds);
    for (std::size_t c = 0; c < stats.counts.size(); ++c) {
        if (stats.counts[c] < 2) {
            throw ConfigError("train: class '" + ds.class_names[c] + "' has " +
                              std::to_string(stats.counts[c]) + " samples; at least 2 are required");
        }
    }
    if ((ds.X.array().abs() > 1.0 + 1e-9).any()) {
        throw ContractError("train: features must be scaled to [-1, 1]");
    }
}

} // namespace

TrainedGan train(const Dataset& scaled, const ScalerParams& scaler, const GanConfig& config_in,
                 const TrainOptions& options) {
    config_in.validate();
    const GanConfig config = config_in.canonical();
    check_trainable(scaled);
    if (scaler.dimension() != scaled.dimension()) {
        throw DimensionError("train: scaler dimension differs from data dimension");
    }

    SeededRng rng(config.seed);
    TrainedGan model;
    model.config = config;
    model.schema = scaled.schema;
    model.class_names = scaled.class_names;
    model.scaler = scaler;
    model.generator = make_generator(config, scaled.dimension(), scaled.class_count(), rng);
    model.discriminator = make_discriminator(config, scaled.dimension(), scaled.class_count(), rng);

    auto& G = model.generator;
    auto& D = model.discriminator;
    AdamState<double> g_opt(G.params, config.optimizer);
    AdamState<double> d_opt(D.params, config.optimizer);
    const bool wgan = config.variant == GanVariant::wgan_gp;

    for (Index epoch = 1; epoch <= config.epochs; ++epoch) {
        EpochLosses sums;
        Index used = 0;
        const auto batches = batch_indices(scaled.rows(), config.batch_size, rng);
        for (std::size_t b = 0; b < batches.size(); ++b) {
            const auto& idx = batches[b];
            if (idx.size() < 2) {
                continue;
            }
            const auto batch = static_cast<Index>(b);
            const auto n = static_cast<Index>(idx.size());
            Matrix X_real(n, scaled.dimension());
            std::vector<int> y(idx.size());
            for (std::size_t i = 0; i < idx.size(); ++i) {
                X_real.row(static_cast<Index>(i)) = scaled.X.row(idx[i]);
                y[i] = scaled.y[static_cast<std::size_t>(idx[i])];
            }

            // Discriminator / critic.
            double loss_d = 0.0;
            if (wgan) {
                for (Index s = 0; s < config.critic_steps; ++s) {
                    const Matrix Z = rng.gaussian_matrix(n, config.latent_dim);
                    Vector mix(n);
                    for (Index i = 0; i < n; ++i) {
                        mix(i) = rng.uniform();
                    }
                    auto step = critic_step(G, D, X_real, y, Z, mix, config);
                    check_finite(step.loss, "critic loss", epoch, batch);
                    update(Network::discriminator, D.params, step.grads, d_opt, config.clip, epoch, batch, options);
                    loss_d += step.loss / static_cast<double>(config.critic_steps);
                }
            } else {
                const Matrix Z = rng.gaussian_matrix(n, config.latent_dim);
                auto step = discriminator_step(G, D, X_real, y, Z, config);
                check_finite(step.loss, "discriminator loss", epoch, batch);
                update(Network::discriminator, D.params, step.grads, d_opt, config.clip, epoch, batch, options);
                loss_d = step.loss;
            }

            // Generator, with fresh noise against the updated discriminator.
            const Matrix Z = rng.gaussian_matrix(n, config.latent_dim);
            auto step = generator_step(G, D, X_real, y, Z, config);
            check_finite(step.total, "generator loss", epoch, batch);
            check_finite(step.mv, "mean-variance feedback", epoch, batch);
            check_finite(step.corr, "correlation feedback", epoch, batch);
            update(Network::generator, G.params, step.grads, g_opt, config.clip, epoch, batch, options);

            sums.loss_d += loss_d;
            sums.loss_adv += step.adv;
            sums.loss_mv += step.mv;
            sums.loss_corr += step.corr;
            sums.loss_g += step.total;
            ++used;
        }
        const double inv = used > 0 ? 1.0 / static_cast<double>(used) : 0.0;
        EpochLosses row{epoch, sums.loss_d * inv, sums.loss_adv * inv, sums.loss_mv * inv,
                        sums.loss_corr * inv, sums.loss_g * inv};
        model.log.push_back(row);
        if (options.on_epoch) {
            options.on_epoch(row);
        }
    }
    return model;
}

TrainedGan train(const Dataset& raw, const GanConfig& config, const TrainOptions& options) {
    raw.validate();
    const auto scaler = fit_scaler(raw);
    return train(apply_scale(raw, scaler), scaler, config, options);
}

Dataset synthesize_balanced(const TrainedGan& model, Index per_class, std::uint64_t seed) {
    if (per_class < 1) {
        throw ContractError("synthesize_balanced: per-class count must be >= 1");
    }
    const int classes = static_cast<int>(model.class_names.size());
    SeededRng rng(seed);
    Dataset out;
    out.schema = model.schema;
    out.class_names = model.class_names;
    out.X.resize(per_class * classes, model.generator.output_dim());
    out.y.reserve(static_cast<std::size_t>(per_class * classes));
    for (int c = 0; c < classes; ++c) {
        const Matrix Z = rng.gaussian_matrix(per_class, model.generator.latent_dim);
        const std::vector<int> labels(static_cast<std::size_t>(per_class), c);
        const Matrix X = inverse_scale(model.generator.forward(Z, labels).output, model.scaler);
        out.X.middleRows(c * per_class, per_class) = X;
        out.y.insert(out.y.end(), labels.begin(), labels.end());
    }
    // tanh saturates to exactly +-1 in floating point; keep the affine image
    // inside the fitted range.
    for (Index j = 0; j < out.X.cols(); ++j) {
        out.X.col(j) = out.X.col(j).cwiseMax(model.scaler.min(j)).cwiseMin(model.scaler.max(j));
    }
    return out;
}

} // namespace f2gan
