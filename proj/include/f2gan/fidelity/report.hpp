#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "f2gan/data/dataset.hpp"
#include "f2gan/data/scaler.hpp"

namespace f2gan {

struct FeatureFidelity {
    std::string feature_name;
    double wasserstein = 0.0;
    double ks = 0.0;
};

struct FidelityReport {
    std::vector<FeatureFidelity> per_feature;
    double mmd = 0.0;
    double mmd_sigma = 0.0;
    double avg_wasserstein = 0.0;
    double avg_ks = 0.0;
    double delta_stat = 0.0;
    Index real_count = 0;
    Index synthetic_count = 0;
};

struct FidelityOptions {
    /// Kernel bandwidth for MMD; median heuristic when empty.
    std::optional<double> mmd_sigma;
    /// Scaler for the MMD features; fitted on the real data when empty.
    std::optional<ScalerParams> scaler;
};

/// Wasserstein, KS and delta_stat in original units; MMD on features scaled
/// to [-1, 1] with the real-data scaler. Feature names must match exactly.
FidelityReport evaluate_fidelity(const Dataset& real, const Dataset& synth, const FidelityOptions& options = {});

struct HistogramSeries {
    std::string feature_name;
    std::optional<std::string> class_name;  // empty = all classes pooled
    std::vector<double> bin_edges;          // bins + 1 edges, original units
    std::vector<double> real_density;
    std::vector<double> synthetic_density;
    Index real_count = 0;
    Index synthetic_count = 0;
};

struct HistogramExport {
    Index bins = 0;
    std::vector<HistogramSeries> series;
};

/// Binned densities per (feature, class) plus a pooled series per feature.
/// Edges span the union range of both samples; a zero-width range is widened
/// to [v - 0.5, v + 0.5]. A side with no samples gets all-zero densities.
HistogramExport export_histograms(const Dataset& real, const Dataset& synth, Index bins = 64);

nlohmann::json to_json(const FidelityReport& r);
nlohmann::json to_json(const HistogramExport& h);

} // namespace f2gan
