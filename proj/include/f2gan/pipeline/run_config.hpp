#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "f2gan/genmodels/config.hpp"
#include "f2gan/scenario/scenario.hpp"
#include "f2gan/tstr/tstr.hpp"

namespace f2gan {

struct FixtureSettings {
    std::optional<ScenarioConfig> external = default_scenario(ScenarioKind::external);
    std::optional<ScenarioConfig> internal = default_scenario(ScenarioKind::internal);
    /// Size of the independently drawn holdout file, relative to samples_total.
    double holdout_fraction = 0.2;
};

struct FidelitySettings {
    Index bins = 64;
    std::optional<double> mmd_sigma;
};

struct TstrSettings {
    std::vector<ClassifierKind> classifiers = kAllClassifiers;
    ClassifierParams params;
};

/// Whole-pipeline configuration:
///   {"seed", "scenario": {"external", "internal", "holdout_fraction"},
///    "gan", "fidelity": {"bins", "mmd_sigma"},
///    "tstr": {"classifiers", ...classifier params}, "paths": {"out_dir"}}
/// Every stage seed is derived from the top-level seed; seeds written inside
/// sections are replaced (see stage_seed).
struct RunConfig {
    std::uint64_t seed = 0;
    FixtureSettings scenario;
    GanConfig gan = default_gan_config(GanVariant::f2gan);
    FidelitySettings fidelity;
    TstrSettings tstr;
    std::filesystem::path out_dir = "out";

    /// Re-derives every section seed from `seed`.
    void apply_seed(std::uint64_t new_seed);
};

/// derive_seed(seed, stage) for the stages "fixture.external",
/// "fixture.internal", "fixture.external_holdout", "fixture.internal_holdout",
/// "train", "synth" and "tstr".
std::uint64_t stage_seed(std::uint64_t seed, std::string_view stage);

RunConfig default_run_config();

/// Absent keys take defaults; unknown keys are rejected with ConfigError.
RunConfig run_config_from_json(const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);

/// Effective configuration, including derived seeds. Reading it back yields
/// the same RunConfig.
nlohmann::json to_json(const RunConfig& c);

} // namespace f2gan
