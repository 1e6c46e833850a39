#include "f2gan/genmodels/losses.hpp"

#include <cmath>
#include <string>

#include "f2gan/errors.hpp"
#include "f2gan/numerics/statistics.hpp"

namespace f2gan {
namespace {

const double kLogFloorValue = std::log(kLogFloor);

double softplus(double x) {
    return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double sigmoid(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

// log sigmoid(x) and log(1 - sigmoid(x)) with their derivatives, floored.
struct LogTerm {
    double value;
    double slope;
};

LogTerm log_sigmoid(double x) {
    const double v = -softplus(-x);
    if (v < kLogFloorValue) {
        return {kLogFloorValue, 0.0};
    }
    return {v, sigmoid(-x)};
}

LogTerm log_one_minus_sigmoid(double x) {
    const double v = -softplus(x);
    if (v < kLogFloorValue) {
        return {kLogFloorValue, 0.0};
    }
    return {v, -sigmoid(x)};
}

void require_logits(const Matrix& logits, const char* what) {
    if (logits.rows() < 1 || logits.cols() != 1) {
        throw ContractError(std::string(what) + ": expected a nonempty column of logits");
    }
}

void require_feature_pair(const Matrix& F_r, const Matrix& F_g, const char* what) {
    if (F_r.cols() != F_g.cols() || F_r.cols() < 1) {
        throw ContractError(std::string(what) + ": feature dimensions differ (" +
                            std::to_string(F_r.cols()) + " vs " + std::to_string(F_g.cols()) + ")");
    }
    if (F_r.rows() < 2 || F_g.rows() < 2) {
        throw ContractError(std::string(what) +
                            ": batches need at least two rows (standard deviation undefined)");
    }
}

struct ColumnMoments {
    RowVector mean;
    RowVector std;
};

ColumnMoments moments(const Matrix& F) {
    const double n = static_cast<double>(F.rows());
    ColumnMoments m;
    m.mean = F.colwise().mean();
    m.std = ((F.rowwise() - m.mean).array().square().colwise().sum() / n).sqrt().matrix();
    return m;
}

// Column-standardized copy; degenerate columns are zeroed.
Matrix standardize(const Matrix& F, const ColumnMoments& m) {
    Matrix Z = F.rowwise() - m.mean;
    for (Index j = 0; j < F.cols(); ++j) {
        if (m.std(j) < kDegenerateStd) {
            Z.col(j).setZero();
        } else {
            Z.col(j) /= m.std(j);
        }
    }
    return Z;
}

Matrix correlation_from_standardized(const Matrix& Z) {
    Matrix rho = (Z.transpose() * Z) / static_cast<double>(Z.rows());
    rho.diagonal().setOnes();
    return rho;
}

} // namespace

LossGrad adversarial_loss_g(const Matrix& fake_logits) {
    require_logits(fake_logits, "adversarial_loss_g");
    const double inv = 1.0 / static_cast<double>(fake_logits.rows());
    LossGrad out{0.0, Matrix(fake_logits.rows(), 1)};
    for (Index i = 0; i < fake_logits.rows(); ++i) {
        const auto t = log_one_minus_sigmoid(fake_logits(i, 0));
        out.value += t.value * inv;
        out.grad(i, 0) = t.slope * inv;
    }
    return out;
}

LossGrad adversarial_loss_g_non_saturating(const Matrix& fake_logits) {
    require_logits(fake_logits, "adversarial_loss_g_non_saturating");
    const double inv = 1.0 / static_cast<double>(fake_logits.rows());
    LossGrad out{0.0, Matrix(fake_logits.rows(), 1)};
    for (Index i = 0; i < fake_logits.rows(); ++i) {
        const auto t = log_sigmoid(fake_logits(i, 0));
        out.value -= t.value * inv;
        out.grad(i, 0) = -t.slope * inv;
    }
    return out;
}

LossGrad mv_feedback(const Matrix& F_r, const Matrix& F_g) {
    require_feature_pair(F_r, F_g, "mv_feedback");
    const auto r = moments(F_r);
    const auto g = moments(F_g);
    const RowVector dmean = r.mean - g.mean;
    const RowVector dstd = r.std - g.std;

    LossGrad out;
    out.value = dmean.squaredNorm() + dstd.squaredNorm();

    const double n = static_cast<double>(F_g.rows());
    // d/dmu_g = -2 dmean; d/dsigma_g = -2 dstd; dsigma_j/dF_ij = (F_ij - mu_j) / (n sigma_j).
    RowVector std_coeff(F_g.cols());
    for (Index j = 0; j < F_g.cols(); ++j) {
        std_coeff(j) = g.std(j) > 0.0 ? -2.0 * dstd(j) / (n * g.std(j)) : 0.0;
    }
    out.grad = (F_g.rowwise() - g.mean).array().rowwise() * std_coeff.array();
    out.grad.rowwise() += (-2.0 / n) * dmean;
    return out;
}

LossGrad corr_feedback(const Matrix& F_r, const Matrix& F_g) {
    require_feature_pair(F_r, F_g, "corr_feedback");
    const Matrix rho_r = pearson_correlation(F_r);
    const auto g = moments(F_g);
    const Matrix Z = standardize(F_g, g);
    const Matrix rho_g = correlation_from_standardized(Z);
    const Matrix diff = rho_r - rho_g;

    LossGrad out;
    out.value = diff.squaredNorm();

    // dL/drho_g with the (constant) diagonal removed; symmetric.
    Matrix G = -2.0 * diff;
    G.diagonal().setZero();
    const double n = static_cast<double>(F_g.rows());
    const Matrix dZ = (2.0 / n) * (Z * G);

    out.grad = Matrix::Zero(F_g.rows(), F_g.cols());
    for (Index j = 0; j < F_g.cols(); ++j) {
        if (g.std(j) < kDegenerateStd) {
            continue;
        }
        const double mean_dz = dZ.col(j).mean();
        const double mean_dz_z = dZ.col(j).dot(Z.col(j)) / n;
        out.grad.col(j) = ((dZ.col(j).array() - mean_dz - Z.col(j).array() * mean_dz_z) / g.std(j)).matrix();
    }
    return out;
}

double generator_loss(double adv, double mv, double corr, double lambda_mv, double lambda_corr) {
    if (lambda_mv < 0.0 || lambda_corr < 0.0) {
        throw ConfigError("generator_loss: feedback weights must be non-negative");
    }
    return adv + lambda_mv * mv + lambda_corr * corr;
}

DiscriminatorLoss discriminator_loss(const Matrix& real_logits, const Matrix& fake_logits, double alpha) {
    require_logits(real_logits, "discriminator_loss");
    require_logits(fake_logits, "discriminator_loss");
    const double inv_r = 1.0 / static_cast<double>(real_logits.rows());
    const double inv_f = 1.0 / static_cast<double>(fake_logits.rows());
    DiscriminatorLoss out{0.0, Matrix(real_logits.rows(), 1), Matrix(fake_logits.rows(), 1)};
    for (Index i = 0; i < real_logits.rows(); ++i) {
        const auto pos = log_sigmoid(real_logits(i, 0));
        const auto neg = log_one_minus_sigmoid(real_logits(i, 0));
        out.value -= (alpha * pos.value + (1.0 - alpha) * neg.value) * inv_r;
        out.real_grad(i, 0) = -(alpha * pos.slope + (1.0 - alpha) * neg.slope) * inv_r;
    }
    for (Index i = 0; i < fake_logits.rows(); ++i) {
        const auto neg = log_one_minus_sigmoid(fake_logits(i, 0));
        out.value -= neg.value * inv_f;
        out.fake_grad(i, 0) = -neg.slope * inv_f;
    }
    return out;
}

double wgan_gp_critic_loss(const Matrix& real_scores, const Matrix& fake_scores,
                           const Vector& interpolate_grad_norms, double lambda) {
    if (real_scores.size() < 1 || fake_scores.size() < 1 || interpolate_grad_norms.size() < 1) {
        throw ContractError("wgan_gp_critic_loss: empty input");
    }
    const double penalty = (interpolate_grad_norms.array() - 1.0).square().mean();
    return fake_scores.mean() - real_scores.mean() + lambda * penalty;
}

} // namespace f2gan
