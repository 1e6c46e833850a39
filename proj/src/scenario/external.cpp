#include <algorithm>
#include <cmath>

#include "f2gan/errors.hpp"
#include "f2gan/numerics/rng.hpp"
#include "f2gan/scenario/scenario.hpp"

namespace f2gan {
namespace {

constexpr double kNominalVoltage = 277.0;
constexpr std::array<double, 3> kLineCurrent{60.0, 45.0, 30.0};
constexpr std::array<double, 3> kPvShare{0.2, 0.6, 1.0};
constexpr std::array<double, 3> kPhaseUnbalance{1.0, 0.997, 1.003};
constexpr std::array<const char*, 3> kLineNames{"12", "23", "32"};
constexpr double kFaultImpedance = 0.5;
constexpr double kHealthyCurrentRise = 0.05;
constexpr double kNoiseFloor = 0.05;

struct TypeResponse {
    double depth;
    double gain;
    double swell;
};

TypeResponse response_of(FaultType t) {
    switch (t) {
    case FaultType::LG: return {0.80, 6.0, 0.10};
    case FaultType::LLG: return {0.85, 8.0, 0.25};
    case FaultType::LL: return {0.55, 3.0, 0.0};
    case FaultType::LLL: return {0.90, 10.0, 0.0};
    }
    return {};
}

double coupling(int faulted_line, int line) {
    if (faulted_line == line) return 1.0;
    return std::abs(faulted_line - line) == 1 ? 0.3 : 0.15;
}

std::vector<ExternalClass> build_classes() {
    std::vector<ExternalClass> out;
    const char* ph = "abc";
    for (int line = 0; line < 3; ++line) {
        const std::string prefix = std::string("L") + kLineNames[line] + "_";
        for (int p = 0; p < 3; ++p) {
            ExternalClass c{line, FaultType::LG, {}, prefix + "LG_" + ph[p]};
            c.phases[p] = true;
            out.push_back(c);
        }
        for (FaultType t : {FaultType::LLG, FaultType::LL}) {
            for (int p = 0; p < 3; ++p) {
                const int q = (p + 1) % 3;
                const char* tag = t == FaultType::LLG ? "LLG_" : "LL_";
                ExternalClass c{line, t, {}, prefix + tag + ph[p] + ph[q]};
                c.phases[p] = true;
                c.phases[q] = true;
                out.push_back(c);
            }
        }
        out.push_back(ExternalClass{line, FaultType::LLL, {true, true, true}, prefix + "LLL"});
    }
    return out;
}

} // namespace

const std::vector<ExternalClass>& external_classes() {
    static const std::vector<ExternalClass> classes = build_classes();
    return classes;
}

std::vector<std::string> external_feature_names() {
    std::vector<std::string> names;
    for (const char* q : {"V", "I"}) {
        for (const char* line : kLineNames) {
            for (char p : std::string("abc")) {
                names.push_back(std::string(q) + line + p);
            }
        }
    }
    return names;
}

std::array<double, kExternalFeatureCount> external_response(const ExternalClass& cls, const OperatingPoint& op) {
    if (op.fault_resistance < 0.0) {
        throw ContractError("external_response: fault resistance must be >= 0");
    }
    const double s = kFaultImpedance / (kFaultImpedance + op.fault_resistance);
    const TypeResponse r = response_of(cls.type);
    std::array<double, kExternalFeatureCount> out{};
    for (int line = 0; line < 3; ++line) {
        const double v_base = kNominalVoltage * (1.0 - 0.02 * op.load + 0.015 * op.irradiance * kPvShare[line]);
        const double i_base = kLineCurrent[line] * (0.6 + 0.4 * op.load) *
                              (1.0 - 0.25 * op.irradiance * kPvShare[line]);
        const double c = coupling(cls.line, line);
        for (int p = 0; p < 3; ++p) {
            double v = v_base * kPhaseUnbalance[p];
            double i = i_base;
            if (cls.phases[p]) {
                v *= 1.0 - c * r.depth * s;
                i *= 1.0 + c * r.gain * s;
            } else if (line == cls.line) {
                v *= 1.0 + r.swell * s;
                i *= 1.0 + kHealthyCurrentRise * s;
            }
            out[static_cast<std::size_t>(line * 3 + p)] = v;
            out[static_cast<std::size_t>(9 + line * 3 + p)] = i;
        }
    }
    return out;
}

Dataset generate_external(const ScenarioConfig& config) {
    config.validate();
    const auto& classes = external_classes();
    Dataset ds;
    ds.schema = {external_feature_names(), "fault_class"};
    for (const auto& c : classes) ds.class_names.push_back(c.name);
    ds.X.resize(config.samples_total, kExternalFeatureCount);
    ds.y.resize(static_cast<std::size_t>(config.samples_total));
    for (Index i = 0; i < config.samples_total; ++i) {
        SeededRng rng(derive_seed(config.seed, static_cast<std::uint64_t>(i)));
        const int label = static_cast<int>(i % kExternalClassCount);
        OperatingPoint op;
        op.fault_resistance = rng.uniform(config.fault_resistance.lo, config.fault_resistance.hi);
        op.irradiance = rng.uniform(config.irradiance.lo, config.irradiance.hi);
        op.load = rng.uniform(config.load.lo, config.load.hi);
        const auto clean = external_response(classes[static_cast<std::size_t>(label)], op);
        for (Index j = 0; j < kExternalFeatureCount; ++j) {
            const double factor = std::max(kNoiseFloor, 1.0 + config.noise_std * rng.gaussian());
            ds.X(i, j) = clean[static_cast<std::size_t>(j)] * factor;
        }
        ds.y[static_cast<std::size_t>(i)] = label;
    }
    return ds;
}

Dataset generate_scenario(const ScenarioConfig& config) {
    Dataset ds = config.kind == ScenarioKind::external ? generate_external(config) : generate_internal(config);
    if (config.imbalance) {
        ds = apply_imbalance(ds, config.imbalance->minority_classes, config.imbalance->ratio,
                             derive_seed(config.seed, "imbalance"));
    }
    return ds;
}

} // namespace f2gan
