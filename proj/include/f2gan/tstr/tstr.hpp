#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "f2gan/data/dataset.hpp"
#include "f2gan/data/scaler.hpp"
#include "f2gan/numerics/mlp.hpp"

namespace f2gan {

enum class ClassifierKind { decision_tree, knn, neural_net, linear_svm };

std::string to_string(ClassifierKind k);
ClassifierKind classifier_kind_from_string(const std::string& s);

inline const std::vector<ClassifierKind> kAllClassifiers{ClassifierKind::decision_tree, ClassifierKind::knn,
                                                         ClassifierKind::neural_net, ClassifierKind::linear_svm};

struct ClassifierParams {
    Index max_depth = 12;
    Index k = 5;
    std::vector<Index> nn_hidden{64, 32};
    Index nn_epochs = 200;
    double nn_learning_rate = 1e-3;
    Index batch_size = 64;
    double svm_l2 = 1e-3;
    Index svm_epochs = 200;
    double svm_learning_rate = 1e-2;

    void validate() const;

    bool operator==(const ClassifierParams&) const = default;
};

nlohmann::json to_json(const ClassifierParams& p);
/// Absent keys take defaults; unknown keys are rejected.
ClassifierParams classifier_params_from_json(const nlohmann::json& j);

struct TreeNode {
    int feature = -1;        // -1 marks a leaf
    double threshold = 0.0;  // go left when x[feature] <= threshold
    int left = -1;
    int right = -1;
    int label = 0;
};

struct TrainedClassifier {
    ClassifierKind kind = ClassifierKind::knn;
    int classes = 0;
    Index dimension = 0;
    Index k = 1;
    std::vector<TreeNode> tree;     // decision_tree; node 0 is the root
    Matrix points;                  // knn
    std::vector<int> point_labels;  // knn
    MlpSpec spec;                   // neural_net, linear_svm (single layer)
    MlpParams<double> params;
};

/// Fits on `train` as given (callers scale features first). Every class of
/// train.class_names needs at least one sample, two for the neural net.
///   decision_tree  greedy Gini splits; ties go to the lowest feature, then the
///                  lowest threshold; leaves vote for the majority, ties to
///                  the lowest class index
///   knn            stores the points
///   neural_net     softmax MLP, cross-entropy, Adam, mini-batches
///   linear_svm     one-vs-rest hinge loss with L2 penalty, Adam, mini-batches
TrainedClassifier fit_classifier(ClassifierKind kind, const Dataset& train, const ClassifierParams& params,
                                 std::uint64_t seed);

/// knn neighbours are ranked by (distance, label); vote ties go to the
/// smallest class index.
std::vector<int> predict(const TrainedClassifier& model, const Matrix& X);

struct ClassificationMetrics {
    double accuracy = 0.0;
    double precision = 0.0;  // macro
    double recall = 0.0;     // macro
    double f1 = 0.0;         // macro of per-class harmonic means
    std::vector<double> class_precision;
    std::vector<double> class_recall;
    std::vector<double> class_f1;
    std::vector<std::vector<Index>> confusion;  // [true][predicted]
};

/// Macro averages run over all C classes; 0/0 counts as 0.
ClassificationMetrics classification_metrics(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                                             int classes);

struct TstrEntry {
    ClassifierKind kind = ClassifierKind::knn;
    ClassificationMetrics metrics;
};

struct TstrReport {
    std::vector<std::string> class_names;
    std::vector<TstrEntry> entries;
    double avg_accuracy = 0.0;
    double avg_precision = 0.0;
    double avg_recall = 0.0;
    double avg_f1 = 0.0;
    Index train_count = 0;
    Index test_count = 0;
};

/// Fits a scaler on real_test, scales both sides and maps labels by name onto
/// the real class order, followed by any classes only the synthetic set has.
/// Each real class needs synthetic samples. Kind k is fitted with seed
/// derive_seed(seed, to_string(k)).
TstrReport run_tstr(const Dataset& synth_train, const Dataset& real_test, const std::vector<ClassifierKind>& kinds,
                    const ClassifierParams& params, std::uint64_t seed);

nlohmann::json to_json(const TstrReport& r);

/// Fixed-width table: one row per classifier then an "average" row.
std::string render_tstr_table(const TstrReport& r, const std::string& title = "");

} // namespace f2gan
