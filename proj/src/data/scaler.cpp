#include "f2gan/data/scaler.hpp"

#include "f2gan/errors.hpp"

namespace f2gan {
namespace {

void check_width(const Matrix& X, const ScalerParams& sp) {
    if (sp.min.size() != sp.max.size() || X.cols() != sp.dimension()) {
        throw DimensionError("scaler has " + std::to_string(sp.dimension()) +
                             " features, data has " + std::to_string(X.cols()));
    }
}

} // namespace

ScalerParams fit_scaler(const Dataset& ds) {
    if (ds.rows() < 1) {
        throw ContractError("fit_scaler: empty dataset");
    }
    return {ds.X.colwise().minCoeff().transpose(), ds.X.colwise().maxCoeff().transpose()};
}

Matrix apply_scale(const Matrix& X, const ScalerParams& sp) {
    check_width(X, sp);
    Matrix out(X.rows(), X.cols());
    for (Index j = 0; j < X.cols(); ++j) {
        const double range = sp.max(j) - sp.min(j);
        if (range > 0.0) {
            out.col(j) = ((X.col(j).array() - sp.min(j)) * (2.0 / range) - 1.0).matrix();
        } else {
            out.col(j).setZero();
        }
    }
    return out;
}

Matrix inverse_scale(const Matrix& X, const ScalerParams& sp) {
    check_width(X, sp);
    Matrix out(X.rows(), X.cols());
    for (Index j = 0; j < X.cols(); ++j) {
        const double range = sp.max(j) - sp.min(j);
        if (range > 0.0) {
            out.col(j) = ((X.col(j).array() + 1.0) * (0.5 * range) + sp.min(j)).matrix();
        } else {
            out.col(j).setConstant(sp.min(j));
        }
    }
    return out;
}

Dataset apply_scale(const Dataset& ds, const ScalerParams& sp) {
    Dataset out = ds;
    out.X = apply_scale(ds.X, sp);
    return out;
}

Dataset inverse_scale(const Dataset& ds, const ScalerParams& sp) {
    Dataset out = ds;
    out.X = inverse_scale(ds.X, sp);
    return out;
}

} // namespace f2gan
