#pragma once

#include "f2gan/numerics/statistics.hpp"
#include "f2gan/numerics/types.hpp"

namespace f2gan {

/// Smallest probability admitted inside a logarithm; log terms are floored at
/// log(kLogFloor) and carry zero gradient there.
inline constexpr double kLogFloor = 1e-12;

/// A loss value with its gradient with respect to one input matrix.
struct LossGrad {
    double value = 0.0;
    Matrix grad;
};

/// Saturating generator term: mean over the batch of log(1 - sigmoid(logit)).
LossGrad adversarial_loss_g(const Matrix& fake_logits);

/// Non-saturating alternative: mean of -log sigmoid(logit).
LossGrad adversarial_loss_g_non_saturating(const Matrix& fake_logits);

/// ||mu_r - mu_g||^2 + ||sigma_r - sigma_g||^2 with per-column means and
/// population standard deviations. Gradient is w.r.t. F_g only; F_r is a
/// constant. Both batches need at least two rows.
LossGrad mv_feedback(const Matrix& F_r, const Matrix& F_g);

/// ||rho_r - rho_g||_F^2 with rho the Pearson correlation matrix across
/// columns. Gradient is w.r.t. F_g only.
LossGrad corr_feedback(const Matrix& F_r, const Matrix& F_g);

/// L_adv + lambda_mv * L_MV + lambda_corr * L_corr. Throws ConfigError for a
/// negative weight.
double generator_loss(double adv, double mv, double corr, double lambda_mv, double lambda_corr);

struct DiscriminatorLoss {
    double value = 0.0;
    Matrix real_grad;
    Matrix fake_grad;
};

/// Binary cross-entropy with the real target smoothed to `alpha` and the fake
/// target 0:
///   -mean[alpha log s(l_r) + (1-alpha) log(1 - s(l_r))] - mean[log(1 - s(l_f))]
DiscriminatorLoss discriminator_loss(const Matrix& real_logits, const Matrix& fake_logits, double alpha);

/// mean(fake) - mean(real) + lambda * mean((norm - 1)^2).
double wgan_gp_critic_loss(const Matrix& real_scores, const Matrix& fake_scores,
                           const Vector& interpolate_grad_norms, double lambda);

} // namespace f2gan
