#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "f2gan/data/dataset.hpp"

namespace f2gan {

enum class ScenarioKind { external, internal };

std::string to_string(ScenarioKind k);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool operator==(const Interval&) const = default;
};

struct ImbalanceSpec {
    std::vector<std::string> minority_classes;
    double ratio = 1.0;

    bool operator==(const ImbalanceSpec&) const = default;
};

/// Operating-condition envelope of the surrogate fault generator. The
/// response model itself is documented in docs/response_model.md.
struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::external;
    Index samples_total = 6000;
    std::optional<ImbalanceSpec> imbalance;
    Interval fault_resistance{0.01, 1.0};  // ohm, external faults only
    Interval irradiance{0.2, 1.0};         // normalized
    Interval load{0.3, 1.0};               // normalized
    double noise_std = 0.02;               // relative, multiplicative
    Index feature_count = 6;               // internal only: 3, 6 or 9
    std::uint64_t seed = 0;

    void validate() const;

    bool operator==(const ScenarioConfig&) const = default;
};

/// Defaults per kind: external 6,000 samples, internal 2,000 samples with
/// irradiance in [0.5, 1].
ScenarioConfig default_scenario(ScenarioKind kind);

nlohmann::json to_json(const ScenarioConfig& c);

/// Absent keys take the kind's defaults; unknown keys are rejected.
ScenarioConfig scenario_config_from_json(const nlohmann::json& j, ScenarioKind kind);

struct OperatingPoint {
    double fault_resistance = 0.1;
    double irradiance = 1.0;
    double load = 1.0;
};

// ---- external: 3 line sections x 10 fault types --------------------------

enum class FaultType { LG, LLG, LL, LLL };

struct ExternalClass {
    int line = 0;                    // 0, 1, 2 for sections 12, 23, 32
    FaultType type = FaultType::LG;
    std::array<bool, 3> phases{};    // faulted phases a, b, c
    std::string name;                // e.g. "L12_LLG_ab"
};

inline constexpr int kExternalClassCount = 30;
inline constexpr int kExternalFeatureCount = 18;

/// The 30 classes in label order: for each line 12, 23, 32:
/// LG a/b/c, LLG ab/bc/ca, LL ab/bc/ca, LLL.
const std::vector<ExternalClass>& external_classes();

/// V12a..V32c then I12a..I32c.
std::vector<std::string> external_feature_names();

/// Noise-free response, in external_feature_names() order.
std::array<double, kExternalFeatureCount> external_response(const ExternalClass& cls, const OperatingPoint& op);

Dataset generate_external(const ScenarioConfig& config);

// ---- internal: inverter switch open-circuit faults -------------------------

struct InternalClass {
    std::vector<int> open_switches;  // 1..6
    std::string name;                // "S1", "S1S4", ...
};

inline constexpr int kInternalClassCount = 12;

const std::vector<InternalClass>& internal_classes();

std::vector<std::string> internal_feature_names(Index feature_count);

/// Noise-free response for the first `feature_count` features.
std::vector<double> internal_response(const InternalClass& cls, const OperatingPoint& op, Index feature_count);

/// Response with no switch open (the distortion-free baseline).
std::vector<double> internal_baseline(const OperatingPoint& op, Index feature_count);

Dataset generate_internal(const ScenarioConfig& config);

/// Dispatch on config.kind, then apply config.imbalance if set.
Dataset generate_scenario(const ScenarioConfig& config);

/// Subsample each named class to ceil(ratio * N_c) rows without replacement;
/// row order is preserved. Throws ContractError for an unknown class.
Dataset apply_imbalance(const Dataset& ds, const std::vector<std::string>& minority, double ratio, std::uint64_t seed);

} // namespace f2gan
