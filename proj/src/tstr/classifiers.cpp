#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "f2gan/data/batching.hpp"
#include "f2gan/errors.hpp"
#include "f2gan/numerics/adam.hpp"
#include "f2gan/numerics/rng.hpp"
#include "f2gan/tstr/tstr.hpp"

namespace f2gan {
namespace {

struct TreeBuilder {
    const Matrix& X;
    const std::vector<int>& y;
    int classes;
    Index max_depth;
    std::vector<TreeNode> nodes;

    static double gini(const std::vector<Index>& counts, Index total) {
        if (total == 0) return 0.0;
        double s = 0.0;
        for (Index c : counts) {
            const double p = static_cast<double>(c) / static_cast<double>(total);
            s += p * p;
        }
        return 1.0 - s;
    }

    int majority(const std::vector<Index>& rows) const {
        std::vector<Index> counts(static_cast<std::size_t>(classes), 0);
        for (Index r : rows) ++counts[static_cast<std::size_t>(y[static_cast<std::size_t>(r)])];
        return static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
    }

    int build(std::vector<Index> rows, Index depth) {
        const int id = static_cast<int>(nodes.size());
        nodes.push_back(TreeNode{-1, 0.0, -1, -1, majority(rows)});
        const Index n = static_cast<Index>(rows.size());
        if (depth >= max_depth || n < 2) return id;

        std::vector<Index> total(static_cast<std::size_t>(classes), 0);
        for (Index r : rows) ++total[static_cast<std::size_t>(y[static_cast<std::size_t>(r)])];
        const double parent = gini(total, n);
        if (parent <= 0.0) return id;

        double best = parent;
        int best_feature = -1;
        double best_threshold = 0.0;
        std::vector<std::pair<double, int>> column(rows.size());
        std::vector<Index> left(static_cast<std::size_t>(classes));
        std::vector<Index> right(static_cast<std::size_t>(classes));
        for (Index j = 0; j < X.cols(); ++j) {
            for (std::size_t i = 0; i < rows.size(); ++i) {
                column[i] = {X(rows[i], j), y[static_cast<std::size_t>(rows[i])]};
            }
            std::sort(column.begin(), column.end());
            std::fill(left.begin(), left.end(), 0);
            right = total;
            for (std::size_t i = 0; i + 1 < column.size(); ++i) {
                ++left[static_cast<std::size_t>(column[i].second)];
                --right[static_cast<std::size_t>(column[i].second)];
                if (column[i].first == column[i + 1].first) continue;
                const Index nl = static_cast<Index>(i + 1);
                const double score = (static_cast<double>(nl) * gini(left, nl) +
                                      static_cast<double>(n - nl) * gini(right, n - nl)) /
                                     static_cast<double>(n);
                if (score < best - 1e-12) {
                    best = score;
                    best_feature = static_cast<int>(j);
                    best_threshold = 0.5 * (column[i].first + column[i + 1].first);
                }
            }
        }
        if (best_feature < 0) return id;

        std::vector<Index> lo, hi;
        for (Index r : rows) {
            (X(r, best_feature) <= best_threshold ? lo : hi).push_back(r);
        }
        rows.clear();
        rows.shrink_to_fit();
        const int l = build(std::move(lo), depth + 1);
        const int h = build(std::move(hi), depth + 1);
        nodes[static_cast<std::size_t>(id)].feature = best_feature;
        nodes[static_cast<std::size_t>(id)].threshold = best_threshold;
        nodes[static_cast<std::size_t>(id)].left = l;
        nodes[static_cast<std::size_t>(id)].right = h;
        return id;
    }
};

// Softmax cross-entropy on logits: mean loss and d/dlogits.
Matrix softmax_xent_grad(const Matrix& logits, const std::vector<int>& y) {
    Matrix g(logits.rows(), logits.cols());
    const double inv = 1.0 / static_cast<double>(logits.rows());
    for (Index i = 0; i < logits.rows(); ++i) {
        const double m = logits.row(i).maxCoeff();
        const RowVector e = (logits.row(i).array() - m).exp().matrix();
        g.row(i) = e / e.sum();
        g(i, y[static_cast<std::size_t>(i)]) -= 1.0;
    }
    return g * inv;
}

// One-vs-rest hinge: sum_c mean_i max(0, 1 - t_ic s_ic), t = +1 for the true class.
Matrix hinge_grad(const Matrix& scores, const std::vector<int>& y) {
    Matrix g = Matrix::Zero(scores.rows(), scores.cols());
    const double inv = 1.0 / static_cast<double>(scores.rows());
    for (Index i = 0; i < scores.rows(); ++i) {
        for (Index c = 0; c < scores.cols(); ++c) {
            const double t = y[static_cast<std::size_t>(i)] == c ? 1.0 : -1.0;
            if (t * scores(i, c) < 1.0) g(i, c) = -t * inv;
        }
    }
    return g;
}

template <typename OutputGrad>
void fit_by_adam(TrainedClassifier& m, const Dataset& train, Index epochs, Index batch_size, double lr, double l2,
                 SeededRng& rng, OutputGrad&& output_grad) {
    AdamSettings settings;
    settings.learning_rate = lr;
    settings.beta1 = 0.9;
    AdamState<double> state(m.params, settings);
    for (Index e = 0; e < epochs; ++e) {
        for (const auto& rows : batch_indices(train.rows(), batch_size, rng)) {
            Matrix X(static_cast<Index>(rows.size()), train.dimension());
            std::vector<int> y(rows.size());
            for (std::size_t i = 0; i < rows.size(); ++i) {
                X.row(static_cast<Index>(i)) = train.X.row(rows[i]);
                y[i] = train.y[static_cast<std::size_t>(rows[i])];
            }
            const auto fp = mlp_forward(m.params, m.spec, X);
            auto bp = mlp_backward(m.params, m.spec, fp.cache, output_grad(fp.output, y));
            if (l2 > 0.0) {
                for (std::size_t k = 0; k < bp.grads.layers.size(); ++k) {
                    bp.grads.layers[k].weight += l2 * m.params.layers[k].weight;
                }
            }
            adam_step(m.params, bp.grads, state);
        }
    }
}

int argmax_lowest(const auto& row) {
    Index best = 0;
    for (Index c = 1; c < row.size(); ++c) {
        if (row(c) > row(best)) best = c;
    }
    return static_cast<int>(best);
}

} // namespace

std::string to_string(ClassifierKind k) {
    switch (k) {
    case ClassifierKind::decision_tree: return "decision_tree";
    case ClassifierKind::knn: return "knn";
    case ClassifierKind::neural_net: return "neural_net";
    case ClassifierKind::linear_svm: return "linear_svm";
    }
    return "?";
}

ClassifierKind classifier_kind_from_string(const std::string& s) {
    for (ClassifierKind k : kAllClassifiers) {
        if (to_string(k) == s) return k;
    }
    throw ConfigError("unknown classifier '" + s + "' (expected decision_tree, knn, neural_net or linear_svm)");
}

void ClassifierParams::validate() const {
    auto require = [](bool ok, const char* msg) {
        if (!ok) throw ConfigError(std::string("tstr config: ") + msg);
    };
    require(max_depth >= 0, "max_depth must be >= 0");
    require(k >= 1, "k must be >= 1");
    require(!nn_hidden.empty(), "nn_hidden must not be empty");
    for (Index h : nn_hidden) require(h >= 1, "nn_hidden sizes must be >= 1");
    require(nn_epochs >= 0 && svm_epochs >= 0, "epochs must be >= 0");
    require(batch_size >= 1, "batch_size must be >= 1");
    require(nn_learning_rate > 0.0 && svm_learning_rate > 0.0, "learning rates must be > 0");
    require(svm_l2 >= 0.0, "svm_l2 must be >= 0");
}

nlohmann::json to_json(const ClassifierParams& p) {
    return {{"max_depth", p.max_depth},       {"k", p.k},
            {"nn_hidden", p.nn_hidden},       {"nn_epochs", p.nn_epochs},
            {"nn_learning_rate", p.nn_learning_rate}, {"batch_size", p.batch_size},
            {"svm_l2", p.svm_l2},             {"svm_epochs", p.svm_epochs},
            {"svm_learning_rate", p.svm_learning_rate}};
}

ClassifierParams classifier_params_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("tstr: expected a JSON object");
    ClassifierParams p;
    const nlohmann::json known = to_json(p);
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) throw ConfigError("tstr: unknown key '" + key + "'");
    }
    try {
        if (j.contains("max_depth")) p.max_depth = j.at("max_depth").get<Index>();
        if (j.contains("k")) p.k = j.at("k").get<Index>();
        if (j.contains("nn_hidden")) p.nn_hidden = j.at("nn_hidden").get<std::vector<Index>>();
        if (j.contains("nn_epochs")) p.nn_epochs = j.at("nn_epochs").get<Index>();
        if (j.contains("nn_learning_rate")) p.nn_learning_rate = j.at("nn_learning_rate").get<double>();
        if (j.contains("batch_size")) p.batch_size = j.at("batch_size").get<Index>();
        if (j.contains("svm_l2")) p.svm_l2 = j.at("svm_l2").get<double>();
        if (j.contains("svm_epochs")) p.svm_epochs = j.at("svm_epochs").get<Index>();
        if (j.contains("svm_learning_rate")) p.svm_learning_rate = j.at("svm_learning_rate").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("tstr: ") + e.what());
    }
    p.validate();
    return p;
}

TrainedClassifier fit_classifier(ClassifierKind kind, const Dataset& train, const ClassifierParams& params,
                                 std::uint64_t seed) {
    params.validate();
    train.validate();
    const auto counts = class_stats(train).counts;
    const Index needed = kind == ClassifierKind::neural_net ? 2 : 1;
    for (std::size_t c = 0; c < counts.size(); ++c) {
        if (counts[c] < needed) {
            throw ContractError("fit_classifier(" + to_string(kind) + "): class '" + train.class_names[c] +
                                "' has " + std::to_string(counts[c]) + " samples, needs " + std::to_string(needed));
        }
    }

    TrainedClassifier m;
    m.kind = kind;
    m.classes = train.class_count();
    m.dimension = train.dimension();
    SeededRng rng(seed);
    switch (kind) {
    case ClassifierKind::decision_tree: {
        TreeBuilder b{train.X, train.y, m.classes, params.max_depth, {}};
        std::vector<Index> rows(static_cast<std::size_t>(train.rows()));
        std::iota(rows.begin(), rows.end(), Index{0});
        b.build(std::move(rows), 0);
        m.tree = std::move(b.nodes);
        break;
    }
    case ClassifierKind::knn:
        m.k = params.k;
        m.points = train.X;
        m.point_labels = train.y;
        break;
    case ClassifierKind::neural_net: {
        std::vector<Index> sizes{m.dimension};
        sizes.insert(sizes.end(), params.nn_hidden.begin(), params.nn_hidden.end());
        sizes.push_back(m.classes);
        m.spec = MlpSpec{sizes, 0.2, OutputActivation::linear};
        m.params = mlp_init(m.spec, rng);
        fit_by_adam(m, train, params.nn_epochs, params.batch_size, params.nn_learning_rate, 0.0, rng,
                    softmax_xent_grad);
        break;
    }
    case ClassifierKind::linear_svm:
        m.spec = MlpSpec{{m.dimension, m.classes}, 0.2, OutputActivation::linear};
        m.params = mlp_init(m.spec, rng);
        fit_by_adam(m, train, params.svm_epochs, params.batch_size, params.svm_learning_rate, params.svm_l2, rng,
                    hinge_grad);
        break;
    }
    return m;
}

std::vector<int> predict(const TrainedClassifier& model, const Matrix& X) {
    if (X.rows() > 0 && X.cols() != model.dimension) {
        throw DimensionError("predict: expected " + std::to_string(model.dimension) + " features, got " +
                             std::to_string(X.cols()));
    }
    std::vector<int> out(static_cast<std::size_t>(X.rows()));
    if (X.rows() == 0) return out;
    switch (model.kind) {
    case ClassifierKind::decision_tree:
        for (Index i = 0; i < X.rows(); ++i) {
            int n = 0;
            while (model.tree[static_cast<std::size_t>(n)].feature >= 0) {
                const auto& node = model.tree[static_cast<std::size_t>(n)];
                n = X(i, node.feature) <= node.threshold ? node.left : node.right;
            }
            out[static_cast<std::size_t>(i)] = model.tree[static_cast<std::size_t>(n)].label;
        }
        break;
    case ClassifierKind::knn: {
        const Index k = std::min<Index>(model.k, model.points.rows());
        std::vector<std::pair<double, int>> ranked(static_cast<std::size_t>(model.points.rows()));
        std::vector<Index> votes(static_cast<std::size_t>(model.classes));
        for (Index i = 0; i < X.rows(); ++i) {
            const Vector d = (model.points.rowwise() - X.row(i)).rowwise().squaredNorm();
            for (Index r = 0; r < d.size(); ++r) {
                ranked[static_cast<std::size_t>(r)] = {d(r), model.point_labels[static_cast<std::size_t>(r)]};
            }
            std::partial_sort(ranked.begin(), ranked.begin() + k, ranked.end());
            std::fill(votes.begin(), votes.end(), 0);
            for (Index r = 0; r < k; ++r) ++votes[static_cast<std::size_t>(ranked[static_cast<std::size_t>(r)].second)];
            out[static_cast<std::size_t>(i)] =
                static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin());
        }
        break;
    }
    case ClassifierKind::neural_net:
    case ClassifierKind::linear_svm: {
        const Matrix scores = mlp_forward(model.params, model.spec, X).output;
        for (Index i = 0; i < X.rows(); ++i) {
            out[static_cast<std::size_t>(i)] = argmax_lowest(scores.row(i));
        }
        break;
    }
    }
    return out;
}

} // namespace f2gan
