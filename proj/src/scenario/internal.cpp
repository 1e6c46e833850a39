#include <algorithm>
#include <cmath>

#include "f2gan/errors.hpp"
#include "f2gan/numerics/rng.hpp"
#include "f2gan/scenario/scenario.hpp"

namespace f2gan {
namespace {

constexpr double kRatedCurrent = 40.0;
constexpr double kNominalVoltage = 277.0;
constexpr std::array<double, 3> kPhaseUnbalance{1.0, 0.997, 1.003};
constexpr double kBaselineHarmonic = 1.5;  // percent
constexpr double kNoiseFloor = 0.05;

// Per open switch, relative to its leg phase p: factors for phases p, p+1, p+2.
struct SwitchEffect {
    std::array<double, 3> current;
    std::array<double, 3> voltage;
    std::array<double, 3> harmonic;  // additive, percent
};

constexpr SwitchEffect kUpper{{0.60, 1.15, 1.04}, {0.94, 1.00, 1.02}, {18.0, 4.0, 2.0}};
constexpr SwitchEffect kLower{{0.70, 1.04, 1.15}, {0.97, 1.02, 1.00}, {12.0, 2.0, 4.0}};

// S1/S4 on leg a, S3/S6 on leg b, S5/S2 on leg c; odd switches are upper.
int leg_of(int sw) {
    switch (sw) {
    case 1: case 4: return 0;
    case 3: case 6: return 1;
    default: return 2;
    }
}

std::vector<InternalClass> build_classes() {
    std::vector<InternalClass> out;
    for (int s = 1; s <= 6; ++s) {
        out.push_back({{s}, "S" + std::to_string(s)});
    }
    for (auto [a, b] : std::array<std::pair<int, int>, 6>{{{1, 4}, {1, 6}, {3, 6}, {3, 2}, {5, 2}, {5, 4}}}) {
        out.push_back({{a, b}, "S" + std::to_string(a) + "S" + std::to_string(b)});
    }
    return out;
}

std::vector<double> response(const std::vector<int>& open, const OperatingPoint& op, Index feature_count) {
    if (feature_count != 3 && feature_count != 6 && feature_count != 9) {
        throw ContractError("internal_response: feature_count must be 3, 6 or 9");
    }
    std::array<double, 3> i{}, v{}, h{};
    const double i_base = kRatedCurrent * op.irradiance * (0.9 + 0.1 * op.load);
    const double v_base = kNominalVoltage * (1.0 - 0.01 * op.load + 0.01 * op.irradiance);
    for (int p = 0; p < 3; ++p) {
        i[p] = i_base;
        v[p] = v_base * kPhaseUnbalance[p];
        h[p] = kBaselineHarmonic;
    }
    for (int sw : open) {
        const int leg = leg_of(sw);
        const SwitchEffect& e = sw % 2 == 1 ? kUpper : kLower;
        for (int k = 0; k < 3; ++k) {
            const int p = (leg + k) % 3;
            i[p] *= e.current[k];
            v[p] *= e.voltage[k];
            h[p] += e.harmonic[k];
        }
    }
    std::vector<double> out(i.begin(), i.end());
    if (feature_count >= 6) out.insert(out.end(), v.begin(), v.end());
    if (feature_count >= 9) out.insert(out.end(), h.begin(), h.end());
    return out;
}

} // namespace

const std::vector<InternalClass>& internal_classes() {
    static const std::vector<InternalClass> classes = build_classes();
    return classes;
}

std::vector<std::string> internal_feature_names(Index feature_count) {
    std::vector<std::string> all{"Ia", "Ib", "Ic", "Va", "Vb", "Vc", "Ha", "Hb", "Hc"};
    if (feature_count != 3 && feature_count != 6 && feature_count != 9) {
        throw ContractError("internal_feature_names: feature_count must be 3, 6 or 9");
    }
    all.resize(static_cast<std::size_t>(feature_count));
    return all;
}

std::vector<double> internal_response(const InternalClass& cls, const OperatingPoint& op, Index feature_count) {
    return response(cls.open_switches, op, feature_count);
}

std::vector<double> internal_baseline(const OperatingPoint& op, Index feature_count) {
    return response({}, op, feature_count);
}

Dataset generate_internal(const ScenarioConfig& config) {
    config.validate();
    const auto& classes = internal_classes();
    Dataset ds;
    ds.schema = {internal_feature_names(config.feature_count), "fault_class"};
    for (const auto& c : classes) ds.class_names.push_back(c.name);
    ds.X.resize(config.samples_total, config.feature_count);
    ds.y.resize(static_cast<std::size_t>(config.samples_total));
    for (Index r = 0; r < config.samples_total; ++r) {
        SeededRng rng(derive_seed(config.seed, static_cast<std::uint64_t>(r)));
        const int label = static_cast<int>(r % kInternalClassCount);
        OperatingPoint op;
        op.irradiance = rng.uniform(config.irradiance.lo, config.irradiance.hi);
        op.load = rng.uniform(config.load.lo, config.load.hi);
        const auto clean = internal_response(classes[static_cast<std::size_t>(label)], op, config.feature_count);
        for (Index j = 0; j < config.feature_count; ++j) {
            const double factor = std::max(kNoiseFloor, 1.0 + config.noise_std * rng.gaussian());
            ds.X(r, j) = clean[static_cast<std::size_t>(j)] * factor;
        }
        ds.y[static_cast<std::size_t>(r)] = label;
    }
    return ds;
}

} // namespace f2gan
