#include "f2gan/genmodels/config.hpp"

#include <cmath>
#include <set>

#include "f2gan/errors.hpp"

namespace f2gan {

std::string to_string(GanVariant v) {
    switch (v) {
    case GanVariant::f2gan:
        return "f2gan";
    case GanVariant::cgan:
        return "cgan";
    case GanVariant::wgan_gp:
        return "wgan_gp";
    }
    return "f2gan";
}

GanVariant gan_variant_from_string(const std::string& s) {
    if (s == "f2gan") return GanVariant::f2gan;
    if (s == "cgan") return GanVariant::cgan;
    if (s == "wgan_gp") return GanVariant::wgan_gp;
    throw ConfigError("unknown GAN variant '" + s + "' (expected f2gan, cgan or wgan_gp)");
}

std::string to_string(GeneratorLossForm f) {
    return f == GeneratorLossForm::saturating ? "saturating" : "non_saturating";
}

GeneratorLossForm generator_loss_form_from_string(const std::string& s) {
    if (s == "saturating") return GeneratorLossForm::saturating;
    if (s == "non_saturating") return GeneratorLossForm::non_saturating;
    throw ConfigError("unknown generator loss form '" + s + "'");
}

void GanConfig::validate() const {
    auto require = [](bool ok, const std::string& msg) {
        if (!ok) {
            throw ConfigError("gan config: " + msg);
        }
    };
    require(latent_dim >= 1, "latent_dim must be >= 1");
    for (const Index h : gen_hidden) require(h >= 1, "gen_hidden sizes must be >= 1");
    require(!disc_hidden.empty(), "disc_hidden needs at least one layer (the feature layer)");
    for (const Index h : disc_hidden) require(h >= 1, "disc_hidden sizes must be >= 1");
    require(std::isfinite(leaky_slope), "leaky_slope must be finite");
    require(std::isfinite(lambda_mv) && lambda_mv >= 0.0, "lambda_mv must be >= 0");
    require(std::isfinite(lambda_corr) && lambda_corr >= 0.0, "lambda_corr must be >= 0");
    if (variant != GanVariant::f2gan) {
        require(lambda_mv == 0.0 && lambda_corr == 0.0,
                "feedback weights must be 0 for variant " + to_string(variant));
    }
    require(label_smoothing > 0.0 && label_smoothing <= 1.0, "label_smoothing must be in (0, 1]");
    require(std::isfinite(clip) && clip > 0.0, "clip must be > 0");
    require(batch_size >= 2, "batch_size must be >= 2 (feature statistics need two rows)");
    require(epochs >= 0, "epochs must be >= 0");
    require(optimizer.learning_rate > 0.0, "optimizer.learning_rate must be > 0");
    require(optimizer.beta1 >= 0.0 && optimizer.beta1 < 1.0, "optimizer.beta1 must be in [0, 1)");
    require(optimizer.beta2 >= 0.0 && optimizer.beta2 < 1.0, "optimizer.beta2 must be in [0, 1)");
    require(optimizer.epsilon > 0.0, "optimizer.epsilon must be > 0");
    require(std::isfinite(gp_weight) && gp_weight >= 0.0, "gp_weight must be >= 0");
    require(critic_steps >= 1, "critic_steps must be >= 1");
}

GanConfig GanConfig::canonical() const {
    GanConfig c = *this;
    if (c.variant == GanVariant::f2gan && c.lambda_mv == 0.0 && c.lambda_corr == 0.0) {
        c.variant = GanVariant::cgan;
    }
    return c;
}

GanConfig default_gan_config(GanVariant variant) {
    GanConfig c;
    c.variant = variant;
    if (variant != GanVariant::f2gan) {
        c.lambda_mv = 0.0;
        c.lambda_corr = 0.0;
    }
    return c;
}

nlohmann::json to_json(const GanConfig& c) {
    return {
        {"variant", to_string(c.variant)},
        {"latent_dim", c.latent_dim},
        {"gen_hidden", c.gen_hidden},
        {"disc_hidden", c.disc_hidden},
        {"leaky_slope", c.leaky_slope},
        {"lambda_mv", c.lambda_mv},
        {"lambda_corr", c.lambda_corr},
        {"label_smoothing", c.label_smoothing},
        {"clip", c.clip},
        {"batch_size", c.batch_size},
        {"epochs", c.epochs},
        {"optimizer",
         {{"learning_rate", c.optimizer.learning_rate},
          {"beta1", c.optimizer.beta1},
          {"beta2", c.optimizer.beta2},
          {"epsilon", c.optimizer.epsilon}}},
        {"generator_loss", to_string(c.generator_loss)},
        {"gp_weight", c.gp_weight},
        {"critic_steps", c.critic_steps},
        {"seed", c.seed},
    };
}

namespace {

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& known, const std::string& where) {
    if (!j.is_object()) {
        throw ConfigError(where + ": expected a JSON object");
    }
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) {
            throw ConfigError(where + ": unknown key '" + key + "'");
        }
    }
}

template <typename T>
void read(const nlohmann::json& j, const char* key, T& out, const std::string& where) {
    if (!j.contains(key)) {
        return;
    }
    try {
        out = j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(where + "." + key + ": " + e.what());
    }
}

} // namespace

GanConfig gan_config_from_json(const nlohmann::json& j) {
    static const std::set<std::string> known{
        "variant", "latent_dim", "gen_hidden", "disc_hidden", "leaky_slope", "lambda_mv",
        "lambda_corr", "label_smoothing", "clip", "batch_size", "epochs", "optimizer",
        "generator_loss", "gp_weight", "critic_steps", "seed"};
    reject_unknown(j, known, "gan");
    std::string variant = "f2gan";
    read(j, "variant", variant, "gan");
    GanConfig c = default_gan_config(gan_variant_from_string(variant));
    read(j, "latent_dim", c.latent_dim, "gan");
    read(j, "gen_hidden", c.gen_hidden, "gan");
    read(j, "disc_hidden", c.disc_hidden, "gan");
    read(j, "leaky_slope", c.leaky_slope, "gan");
    read(j, "lambda_mv", c.lambda_mv, "gan");
    read(j, "lambda_corr", c.lambda_corr, "gan");
    read(j, "label_smoothing", c.label_smoothing, "gan");
    read(j, "clip", c.clip, "gan");
    read(j, "batch_size", c.batch_size, "gan");
    read(j, "epochs", c.epochs, "gan");
    read(j, "gp_weight", c.gp_weight, "gan");
    read(j, "critic_steps", c.critic_steps, "gan");
    read(j, "seed", c.seed, "gan");
    if (j.contains("generator_loss")) {
        std::string form;
        read(j, "generator_loss", form, "gan");
        c.generator_loss = generator_loss_form_from_string(form);
    }
    if (j.contains("optimizer")) {
        const auto& o = j.at("optimizer");
        reject_unknown(o, {"learning_rate", "beta1", "beta2", "epsilon"}, "gan.optimizer");
        read(o, "learning_rate", c.optimizer.learning_rate, "gan.optimizer");
        read(o, "beta1", c.optimizer.beta1, "gan.optimizer");
        read(o, "beta2", c.optimizer.beta2, "gan.optimizer");
        read(o, "epsilon", c.optimizer.epsilon, "gan.optimizer");
    }
    c.validate();
    return c;
}

} // namespace f2gan
