#include "f2gan/errors.hpp"
#include "f2gan/tstr/tstr.hpp"

namespace f2gan {

ClassificationMetrics classification_metrics(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                                             int classes) {
    if (y_true.size() != y_pred.size() || y_true.empty()) {
        throw ContractError("classification_metrics: label vectors must be nonempty and of equal length");
    }
    const auto C = static_cast<std::size_t>(classes);
    ClassificationMetrics m;
    m.confusion.assign(C, std::vector<Index>(C, 0));
    Index correct = 0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const int t = y_true[i];
        const int p = y_pred[i];
        if (t < 0 || t >= classes || p < 0 || p >= classes) {
            throw ContractError("classification_metrics: label out of range at position " + std::to_string(i));
        }
        ++m.confusion[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)];
        correct += t == p ? 1 : 0;
    }
    m.accuracy = static_cast<double>(correct) / static_cast<double>(y_true.size());

    auto ratio = [](Index a, Index b) { return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b); };
    for (std::size_t c = 0; c < C; ++c) {
        Index row = 0, col = 0;
        for (std::size_t k = 0; k < C; ++k) {
            row += m.confusion[c][k];
            col += m.confusion[k][c];
        }
        const Index tp = m.confusion[c][c];
        const double p = ratio(tp, col);
        const double r = ratio(tp, row);
        m.class_precision.push_back(p);
        m.class_recall.push_back(r);
        m.class_f1.push_back(p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0);
        m.precision += p / static_cast<double>(C);
        m.recall += r / static_cast<double>(C);
        m.f1 += m.class_f1.back() / static_cast<double>(C);
    }
    return m;
}

} // namespace f2gan
