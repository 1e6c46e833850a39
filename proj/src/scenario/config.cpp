#include <cmath>
#include <set>

#include "f2gan/errors.hpp"
#include "f2gan/scenario/scenario.hpp"

namespace f2gan {

std::string to_string(ScenarioKind k) {
    return k == ScenarioKind::external ? "external" : "internal";
}

void ScenarioConfig::validate() const {
    auto require = [](bool ok, const std::string& msg) {
        if (!ok) throw ConfigError("scenario config: " + msg);
    };
    require(samples_total >= 1, "samples_total must be >= 1");
    auto valid = [](const Interval& i) { return std::isfinite(i.lo) && std::isfinite(i.hi) && i.lo <= i.hi; };
    require(valid(fault_resistance) && fault_resistance.lo >= 0.0, "fault_resistance must be a nonempty range >= 0");
    require(valid(irradiance) && irradiance.lo >= 0.0 && irradiance.hi <= 1.0, "irradiance must lie in [0, 1]");
    require(irradiance.hi > 0.0 || kind == ScenarioKind::external, "irradiance range must admit output");
    require(valid(load) && load.lo >= 0.0, "load must be a nonempty range >= 0");
    require(std::isfinite(noise_std) && noise_std >= 0.0, "noise_std must be >= 0");
    if (kind == ScenarioKind::internal) {
        require(feature_count == 3 || feature_count == 6 || feature_count == 9, "feature_count must be 3, 6 or 9");
        require(irradiance.lo > 0.0, "internal irradiance must be > 0");
    }
    if (imbalance) {
        require(imbalance->ratio > 0.0 && imbalance->ratio <= 1.0, "imbalance.ratio must be in (0, 1]");
    }
}

ScenarioConfig default_scenario(ScenarioKind kind) {
    ScenarioConfig c;
    c.kind = kind;
    if (kind == ScenarioKind::internal) {
        c.samples_total = 2000;
        c.irradiance = {0.5, 1.0};
    }
    return c;
}

nlohmann::json to_json(const ScenarioConfig& c) {
    nlohmann::json j = {
        {"samples_total", c.samples_total},
        {"fault_resistance", {c.fault_resistance.lo, c.fault_resistance.hi}},
        {"irradiance", {c.irradiance.lo, c.irradiance.hi}},
        {"load", {c.load.lo, c.load.hi}},
        {"noise_std", c.noise_std},
        {"seed", c.seed},
    };
    if (c.kind == ScenarioKind::internal) {
        j["feature_count"] = c.feature_count;
    }
    if (c.imbalance) {
        j["imbalance"] = {{"minority_classes", c.imbalance->minority_classes}, {"ratio", c.imbalance->ratio}};
    } else {
        j["imbalance"] = nullptr;
    }
    return j;
}

ScenarioConfig scenario_config_from_json(const nlohmann::json& j, ScenarioKind kind) {
    const std::string where = "scenario." + to_string(kind);
    if (!j.is_object()) {
        throw ConfigError(where + ": expected a JSON object");
    }
    std::set<std::string> known{"samples_total", "imbalance", "fault_resistance", "irradiance",
                                "load", "noise_std", "seed"};
    if (kind == ScenarioKind::internal) {
        known.insert("feature_count");
    }
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) {
            throw ConfigError(where + ": unknown key '" + key + "'");
        }
    }
    ScenarioConfig c = default_scenario(kind);
    try {
        auto interval = [&](const char* key, Interval& out) {
            if (j.contains(key)) {
                const auto v = j.at(key).get<std::vector<double>>();
                if (v.size() != 2) throw ConfigError(where + "." + key + ": expected [lo, hi]");
                out = {v[0], v[1]};
            }
        };
        if (j.contains("samples_total")) c.samples_total = j.at("samples_total").get<Index>();
        if (j.contains("noise_std")) c.noise_std = j.at("noise_std").get<double>();
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("feature_count")) c.feature_count = j.at("feature_count").get<Index>();
        interval("fault_resistance", c.fault_resistance);
        interval("irradiance", c.irradiance);
        interval("load", c.load);
        if (j.contains("imbalance") && !j.at("imbalance").is_null()) {
            const auto& im = j.at("imbalance");
            for (const auto& [key, value] : im.items()) {
                if (key != "minority_classes" && key != "ratio") {
                    throw ConfigError(where + ".imbalance: unknown key '" + key + "'");
                }
            }
            c.imbalance = ImbalanceSpec{im.at("minority_classes").get<std::vector<std::string>>(),
                                        im.at("ratio").get<double>()};
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(where + ": " + e.what());
    }
    c.validate();
    return c;
}

} // namespace f2gan
