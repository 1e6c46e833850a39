#include "f2gan/numerics/statistics.hpp"

#include "f2gan/errors.hpp"

namespace f2gan {

RowVector column_variance(const Matrix& X) {
    return (X.rowwise() - X.colwise().mean()).array().square().colwise().mean().matrix();
}

Matrix pearson_correlation(const Matrix& X) {
    if (X.rows() < 1) {
        throw ContractError("pearson_correlation: empty matrix");
    }
    const RowVector std = column_variance(X).array().sqrt().matrix();
    Matrix Z = X.rowwise() - X.colwise().mean();
    for (Index j = 0; j < X.cols(); ++j) {
        if (std(j) < kDegenerateStd) {
            Z.col(j).setZero();
        } else {
            Z.col(j) /= std(j);
        }
    }
    Matrix rho = (Z.transpose() * Z) / static_cast<double>(X.rows());
    rho.diagonal().setOnes();
    return rho;
}

} // namespace f2gan
