#include "f2gan/fidelity/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "f2gan/errors.hpp"
#include "f2gan/fidelity/metrics.hpp"

namespace f2gan {
namespace {

void require_same_schema(const Dataset& real, const Dataset& synth) {
    if (real.schema.feature_names != synth.schema.feature_names) {
        throw ContractError("fidelity: real and synthetic feature schemas differ");
    }
}

std::vector<double> column(const Matrix& X, Index j) {
    std::vector<double> v(static_cast<std::size_t>(X.rows()));
    for (Index i = 0; i < X.rows(); ++i) v[static_cast<std::size_t>(i)] = X(i, j);
    return v;
}

std::vector<double> column_for_class(const Dataset& ds, Index j, int cls) {
    std::vector<double> v;
    for (Index i = 0; i < ds.rows(); ++i) {
        if (cls < 0 || ds.y[static_cast<std::size_t>(i)] == cls) v.push_back(ds.X(i, j));
    }
    return v;
}

std::vector<double> densities(const std::vector<double>& values, double lo, double width, Index bins) {
    std::vector<double> d(static_cast<std::size_t>(bins), 0.0);
    if (values.empty()) {
        return d;
    }
    for (const double v : values) {
        auto b = static_cast<Index>(std::floor((v - lo) / width));
        b = std::clamp<Index>(b, 0, bins - 1);
        d[static_cast<std::size_t>(b)] += 1.0;
    }
    const double norm = 1.0 / (static_cast<double>(values.size()) * width);
    for (double& x : d) x *= norm;
    return d;
}

HistogramSeries make_series(const std::string& feature, std::optional<std::string> cls,
                            const std::vector<double>& real, const std::vector<double>& synth, Index bins) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const double v : real) { lo = std::min(lo, v); hi = std::max(hi, v); }
    for (const double v : synth) { lo = std::min(lo, v); hi = std::max(hi, v); }
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double width = (hi - lo) / static_cast<double>(bins);
    HistogramSeries s;
    s.feature_name = feature;
    s.class_name = std::move(cls);
    for (Index b = 0; b <= bins; ++b) {
        s.bin_edges.push_back(b == bins ? hi : lo + width * static_cast<double>(b));
    }
    s.real_density = densities(real, lo, width, bins);
    s.synthetic_density = densities(synth, lo, width, bins);
    s.real_count = static_cast<Index>(real.size());
    s.synthetic_count = static_cast<Index>(synth.size());
    return s;
}

} // namespace

FidelityReport evaluate_fidelity(const Dataset& real, const Dataset& synth, const FidelityOptions& options) {
    require_same_schema(real, synth);
    if (real.rows() < 2 || synth.rows() < 2) {
        throw ContractError("fidelity: both datasets need at least two rows");
    }
    FidelityReport r;
    r.real_count = real.rows();
    r.synthetic_count = synth.rows();
    for (Index j = 0; j < real.dimension(); ++j) {
        const auto a = column(real.X, j);
        const auto b = column(synth.X, j);
        r.per_feature.push_back({real.schema.feature_names[static_cast<std::size_t>(j)], wasserstein_1d(a, b),
                                 ks_statistic(a, b)});
        r.avg_wasserstein += r.per_feature.back().wasserstein;
        r.avg_ks += r.per_feature.back().ks;
    }
    r.avg_wasserstein /= static_cast<double>(real.dimension());
    r.avg_ks /= static_cast<double>(real.dimension());

    const ScalerParams scaler = options.scaler.value_or(fit_scaler(real));
    const Matrix A = apply_scale(real.X, scaler);
    const Matrix B = apply_scale(synth.X, scaler);
    r.mmd_sigma = options.mmd_sigma.value_or(median_heuristic_sigma(A, B));
    r.mmd = mmd_gaussian(A, B, r.mmd_sigma);
    r.delta_stat = delta_stat(real.X, synth.X);
    return r;
}

HistogramExport export_histograms(const Dataset& real, const Dataset& synth, Index bins) {
    require_same_schema(real, synth);
    if (bins < 2) {
        throw ContractError("export_histograms: at least two bins required");
    }
    HistogramExport h;
    h.bins = bins;
    for (Index j = 0; j < real.dimension(); ++j) {
        const auto& feature = real.schema.feature_names[static_cast<std::size_t>(j)];
        h.series.push_back(make_series(feature, std::nullopt, column_for_class(real, j, -1),
                                       column_for_class(synth, j, -1), bins));
        for (int c = 0; c < real.class_count(); ++c) {
            const auto& name = real.class_names[static_cast<std::size_t>(c)];
            const int sc = find_class(synth, name);
            const auto synth_values = sc < 0 ? std::vector<double>{} : column_for_class(synth, j, sc);
            h.series.push_back(make_series(feature, name, column_for_class(real, j, c), synth_values, bins));
        }
    }
    return h;
}

nlohmann::json to_json(const FidelityReport& r) {
    nlohmann::json per = nlohmann::json::array();
    for (const auto& f : r.per_feature) {
        per.push_back({{"feature_name", f.feature_name}, {"wasserstein", f.wasserstein}, {"ks", f.ks}});
    }
    return {{"per_feature", per},
            {"mmd", r.mmd},
            {"mmd_sigma", r.mmd_sigma},
            {"averages", {{"wasserstein", r.avg_wasserstein}, {"ks", r.avg_ks}}},
            {"delta_stat", r.delta_stat},
            {"sample_counts", {{"real", r.real_count}, {"synthetic", r.synthetic_count}}}};
}

nlohmann::json to_json(const HistogramExport& h) {
    nlohmann::json series = nlohmann::json::array();
    for (const auto& s : h.series) {
        series.push_back({{"feature_name", s.feature_name},
                          {"class_name", s.class_name ? nlohmann::json(*s.class_name) : nlohmann::json(nullptr)},
                          {"bin_edges", s.bin_edges},
                          {"real_density", s.real_density},
                          {"synthetic_density", s.synthetic_density},
                          {"real_count", s.real_count},
                          {"synthetic_count", s.synthetic_count}});
    }
    return {{"bins", h.bins}, {"series", series}};
}

} // namespace f2gan
