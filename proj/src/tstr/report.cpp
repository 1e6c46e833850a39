#include <algorithm>
#include <cstdio>
#include <sstream>

#include "f2gan/errors.hpp"
#include "f2gan/numerics/rng.hpp"
#include "f2gan/tstr/tstr.hpp"

namespace f2gan {

TstrReport run_tstr(const Dataset& synth_train, const Dataset& real_test, const std::vector<ClassifierKind>& kinds,
                    const ClassifierParams& params, std::uint64_t seed) {
    if (synth_train.schema.feature_names != real_test.schema.feature_names) {
        throw ContractError("run_tstr: synthetic and real feature names differ");
    }
    if (kinds.empty()) {
        throw ContractError("run_tstr: no classifiers requested");
    }
    // Label space: the real classes in their order, then classes only the
    // synthetic set has. Every real class must be present in the synthetic set.
    std::vector<std::string> names = real_test.class_names;
    for (const auto& n : synth_train.class_names) {
        if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
    }
    const auto synth_counts = class_stats(synth_train).counts;
    for (const auto& n : real_test.class_names) {
        const int c = find_class(synth_train, n);
        if (c < 0 || synth_counts[static_cast<std::size_t>(c)] == 0) {
            throw ContractError("run_tstr: synthetic data has no samples of class '" + n + "'");
        }
    }
    auto relabel = [&](const Dataset& ds) {
        Dataset out = ds;
        out.class_names = names;
        for (int& y : out.y) {
            y = static_cast<int>(std::find(names.begin(), names.end(), ds.class_names[static_cast<std::size_t>(y)]) -
                                 names.begin());
        }
        return out;
    };
    const Dataset test = relabel(real_test);
    const ScalerParams scaler = fit_scaler(real_test);
    const Dataset train = apply_scale(relabel(synth_train), scaler);
    const Matrix test_X = apply_scale(test.X, scaler);

    TstrReport r;
    r.class_names = names;
    r.train_count = train.rows();
    r.test_count = real_test.rows();
    for (ClassifierKind kind : kinds) {
        const auto model = fit_classifier(kind, train, params, derive_seed(seed, to_string(kind)));
        r.entries.push_back({kind, classification_metrics(test.y, predict(model, test_X), test.class_count())});
    }
    const double n = static_cast<double>(r.entries.size());
    for (const auto& e : r.entries) {
        r.avg_accuracy += e.metrics.accuracy / n;
        r.avg_precision += e.metrics.precision / n;
        r.avg_recall += e.metrics.recall / n;
        r.avg_f1 += e.metrics.f1 / n;
    }
    return r;
}

nlohmann::json to_json(const TstrReport& r) {
    nlohmann::json classifiers = nlohmann::json::array();
    for (const auto& e : r.entries) {
        classifiers.push_back({{"classifier", to_string(e.kind)},
                               {"accuracy", e.metrics.accuracy},
                               {"precision", e.metrics.precision},
                               {"recall", e.metrics.recall},
                               {"f1", e.metrics.f1},
                               {"per_class", {{"precision", e.metrics.class_precision},
                                              {"recall", e.metrics.class_recall},
                                              {"f1", e.metrics.class_f1}}},
                               {"confusion", e.metrics.confusion}});
    }
    return {{"class_names", r.class_names},
            {"classifiers", classifiers},
            {"average", {{"accuracy", r.avg_accuracy}, {"precision", r.avg_precision},
                         {"recall", r.avg_recall}, {"f1", r.avg_f1}}},
            {"sample_counts", {{"synthetic_train", r.train_count}, {"real_test", r.test_count}}}};
}

std::string render_tstr_table(const TstrReport& r, const std::string& title) {
    std::ostringstream out;
    if (!title.empty()) out << title << '\n';
    char line[160];
    std::snprintf(line, sizeof line, "%-15s %9s %9s %9s %9s\n", "classifier", "accuracy", "precision", "recall", "f1");
    out << line;
    auto row = [&](const std::string& name, double a, double p, double rc, double f) {
        std::snprintf(line, sizeof line, "%-15s %9.3f %9.3f %9.3f %9.3f\n", name.c_str(), a, p, rc, f);
        out << line;
    };
    for (const auto& e : r.entries) {
        row(to_string(e.kind), e.metrics.accuracy, e.metrics.precision, e.metrics.recall, e.metrics.f1);
    }
    row("average", r.avg_accuracy, r.avg_precision, r.avg_recall, r.avg_f1);
    return out.str();
}

} // namespace f2gan
