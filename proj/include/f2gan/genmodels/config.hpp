#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "f2gan/numerics/adam.hpp"
#include "f2gan/numerics/types.hpp"

namespace f2gan {

enum class GanVariant { f2gan, cgan, wgan_gp };

/// Form of the adversarial generator term: log(1 - D(G(z))) as written in the
/// F2GAN objective, or the common -log D(G(z)) substitute.
enum class GeneratorLossForm { saturating, non_saturating };

std::string to_string(GanVariant v);
GanVariant gan_variant_from_string(const std::string& s);
std::string to_string(GeneratorLossForm f);
GeneratorLossForm generator_loss_form_from_string(const std::string& s);

struct GanConfig {
    GanVariant variant = GanVariant::f2gan;
    Index latent_dim = 64;
    std::vector<Index> gen_hidden{128, 256};
    std::vector<Index> disc_hidden{256, 128};
    double leaky_slope = 0.2;
    double lambda_mv = 1.0;
    double lambda_corr = 1e-3;     // L_corr sums d^2 embedding pairs; at 1.0 it swamps L_adv
    double label_smoothing = 0.9;  // real-class target in the discriminator loss
    double clip = 0.5;             // global gradient-norm bound per network per step
    Index batch_size = 64;
    Index epochs = 500;
    AdamSettings optimizer{};
    GeneratorLossForm generator_loss = GeneratorLossForm::saturating;
    double gp_weight = 10.0;  // WGAN-GP only
    Index critic_steps = 5;   // WGAN-GP only
    std::uint64_t seed = 0;

    /// Throws ConfigError on an invalid combination.
    void validate() const;

    /// An f2gan run with both feedback weights at zero is the plain CGAN; it is
    /// recorded as such so the two produce the same model file.
    GanConfig canonical() const;

    bool uses_feedback() const { return variant == GanVariant::f2gan; }

    bool operator==(const GanConfig&) const = default;
};

/// Defaults for a variant (feedback weights are zero for the baselines).
GanConfig default_gan_config(GanVariant variant);

nlohmann::json to_json(const GanConfig& c);

/// Absent keys take the variant's defaults; unknown keys are rejected.
GanConfig gan_config_from_json(const nlohmann::json& j);

} // namespace f2gan
