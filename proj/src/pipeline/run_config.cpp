#include <fstream>
#include <set>

#include "f2gan/errors.hpp"
#include "f2gan/numerics/rng.hpp"
#include "f2gan/pipeline/run_config.hpp"

namespace f2gan {
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

} // namespace

std::uint64_t stage_seed(std::uint64_t seed, std::string_view stage) {
    return derive_seed(seed, stage);
}

void RunConfig::apply_seed(std::uint64_t new_seed) {
    seed = new_seed;
    if (scenario.external) scenario.external->seed = stage_seed(seed, "fixture.external");
    if (scenario.internal) scenario.internal->seed = stage_seed(seed, "fixture.internal");
    gan.seed = stage_seed(seed, "train");
}

RunConfig default_run_config() {
    RunConfig c;
    c.apply_seed(0);
    return c;
}

RunConfig run_config_from_json(const nlohmann::json& j) {
    reject_unknown(j, {"seed", "scenario", "gan", "fidelity", "tstr", "paths"}, "config");
    RunConfig c;
    try {
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();

        if (j.contains("scenario")) {
            const auto& s = j.at("scenario");
            reject_unknown(s, {"external", "internal", "holdout_fraction"}, "scenario");
            auto section = [&](const char* key, ScenarioKind kind, std::optional<ScenarioConfig>& out) {
                if (!s.contains(key)) return;
                if (s.at(key).is_null()) {
                    out.reset();
                } else {
                    out = scenario_config_from_json(s.at(key), kind);
                }
            };
            section("external", ScenarioKind::external, c.scenario.external);
            section("internal", ScenarioKind::internal, c.scenario.internal);
            if (s.contains("holdout_fraction")) c.scenario.holdout_fraction = s.at("holdout_fraction").get<double>();
            if (!(c.scenario.holdout_fraction >= 0.0 && c.scenario.holdout_fraction <= 1.0)) {
                throw ConfigError("scenario.holdout_fraction must be in [0, 1]");
            }
        }

        if (j.contains("gan")) c.gan = gan_config_from_json(j.at("gan"));

        if (j.contains("fidelity")) {
            const auto& f = j.at("fidelity");
            reject_unknown(f, {"bins", "mmd_sigma"}, "fidelity");
            if (f.contains("bins")) c.fidelity.bins = f.at("bins").get<Index>();
            if (f.contains("mmd_sigma") && !f.at("mmd_sigma").is_null()) {
                c.fidelity.mmd_sigma = f.at("mmd_sigma").get<double>();
            }
            if (c.fidelity.bins < 2) throw ConfigError("fidelity.bins must be >= 2");
            if (c.fidelity.mmd_sigma && !(*c.fidelity.mmd_sigma > 0.0)) {
                throw ConfigError("fidelity.mmd_sigma must be > 0");
            }
        }

        if (j.contains("tstr")) {
            nlohmann::json t = j.at("tstr");
            if (!t.is_object()) throw ConfigError("tstr: expected a JSON object");
            if (t.contains("classifiers")) {
                c.tstr.classifiers.clear();
                for (const auto& name : t.at("classifiers")) {
                    c.tstr.classifiers.push_back(classifier_kind_from_string(name.get<std::string>()));
                }
                if (c.tstr.classifiers.empty()) throw ConfigError("tstr.classifiers must not be empty");
                t.erase("classifiers");
            }
            c.tstr.params = classifier_params_from_json(t);
        }

        if (j.contains("paths")) {
            const auto& p = j.at("paths");
            reject_unknown(p, {"out_dir"}, "paths");
            if (p.contains("out_dir")) c.out_dir = p.at("out_dir").get<std::string>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    c.apply_seed(c.seed);
    return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return run_config_from_json(j);
}

nlohmann::json to_json(const RunConfig& c) {
    nlohmann::json classifiers = nlohmann::json::array();
    for (ClassifierKind k : c.tstr.classifiers) classifiers.push_back(to_string(k));
    nlohmann::json tstr = to_json(c.tstr.params);
    tstr["classifiers"] = classifiers;
    return {
        {"seed", c.seed},
        {"scenario",
         {{"external", c.scenario.external ? to_json(*c.scenario.external) : nlohmann::json(nullptr)},
          {"internal", c.scenario.internal ? to_json(*c.scenario.internal) : nlohmann::json(nullptr)},
          {"holdout_fraction", c.scenario.holdout_fraction}}},
        {"gan", to_json(c.gan)},
        {"fidelity",
         {{"bins", c.fidelity.bins},
          {"mmd_sigma", c.fidelity.mmd_sigma ? nlohmann::json(*c.fidelity.mmd_sigma) : nlohmann::json(nullptr)}}},
        {"tstr", tstr},
        {"paths", {{"out_dir", c.out_dir.string()}}},
    };
}

} // namespace f2gan
