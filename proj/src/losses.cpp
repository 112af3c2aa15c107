#include "isokd/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace isokd {

namespace {

constexpr double kLogFloor = 1e-12;

void check_same_length(const LabelDistribution& x, const LabelDistribution& y,
                       const char* what) {
  if (x.size() != y.size()) {
    throw std::invalid_argument(std::string(what) + ": length mismatch");
  }
}

Vector softmax_values(const Vector& logits, double tau) {
  const Vector scaled = logits / tau;
  const double top = scaled.maxCoeff();
  Vector e = (scaled.array() - top).exp();
  e /= e.sum();
  return e;
}

// d/ds CE(softmax(s / tau), q) = (softmax(s / tau) * sum(q) - q) / tau.
Vector ce_softmax_grad(const Vector& student_logits, const Vector& target,
                       double tau) {
  const Vector p = softmax_values(student_logits, tau);
  return (p * target.sum() - target) / tau;
}

LabelDistribution calibrated_target(const LabelDistribution& teacher_logits,
                                    const MixedHardLabel& h,
                                    const DistillConfig& cfg) {
  const LabelDistribution tempered = softmax_t(teacher_logits, cfg.tau);
  return adapted_irt(tempered, build_order_tree(h)).calibrated;
}

}  // namespace

void DistillConfig::validate() const {
  if (!(tau > 0.0)) throw std::invalid_argument("DistillConfig: tau must be positive");
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("DistillConfig: alpha must lie in [0, 1]");
  }
  if (!(beta >= 0.0)) throw std::invalid_argument("DistillConfig: beta must be >= 0");
  if (!(sigma >= 0.0)) throw std::invalid_argument("DistillConfig: sigma must be >= 0");
}

LabelDistribution softmax_t(const LabelDistribution& logits, double tau) {
  if (logits.space() != LabelSpace::logit) {
    throw std::invalid_argument("softmax_t: input must be in logit space");
  }
  if (!(tau > 0.0)) throw std::invalid_argument("softmax_t: tau must be positive");
  return LabelDistribution::probabilities(softmax_values(logits.values(), tau));
}

double cross_entropy(const LabelDistribution& pred, const LabelDistribution& target) {
  if (pred.space() != LabelSpace::probability ||
      target.space() != LabelSpace::probability) {
    throw std::invalid_argument("cross_entropy: both arguments must be probabilities");
  }
  check_same_length(pred, target, "cross_entropy");
  double ce = 0.0;
  for (Index k = 0; k < pred.size(); ++k) {
    ce -= target[k] * std::log(std::max(pred[k], kLogFloor));
  }
  return ce;
}

double kd_loss(const LabelDistribution& student_logits,
               const LabelDistribution& teacher_logits,
               const LabelDistribution& y, const DistillConfig& cfg) {
  cfg.validate();
  check_same_length(student_logits, teacher_logits, "kd_loss");
  check_same_length(student_logits, y, "kd_loss");
  if (y.space() != LabelSpace::probability) {
    throw std::invalid_argument("kd_loss: y must be a probability vector");
  }
  const double soft = cross_entropy(softmax_t(student_logits, cfg.tau),
                                    softmax_t(teacher_logits, cfg.tau));
  const double hard = cross_entropy(softmax_t(student_logits, 1.0), y);
  return cfg.alpha * cfg.tau * cfg.tau * soft + (1.0 - cfg.alpha) * hard;
}

double kd_aug_loss(const LabelDistribution& student_logits,
                   const LabelDistribution& teacher_logits,
                   const MixedHardLabel& h, const DistillConfig& cfg) {
  return kd_loss(student_logits, teacher_logits, expand_hard_label(h), cfg);
}

double kd_i_loss(const LabelDistribution& student_logits,
                 const LabelDistribution& teacher_logits,
                 const MixedHardLabel& h, const DistillConfig& cfg,
                 CalibratedTermKind kind) {
  const double base = kd_aug_loss(student_logits, teacher_logits, h, cfg);
  const LabelDistribution m_hat = calibrated_target(teacher_logits, h, cfg);
  const double term =
      kind == CalibratedTermKind::student_vs_calibrated
          ? cross_entropy(softmax_t(student_logits, cfg.tau), m_hat)
          : cross_entropy(expand_hard_label(h), m_hat);
  return base + cfg.beta * term;
}

double kd_p_loss(const LabelDistribution& student_logits,
                 const LabelDistribution& teacher_logits,
                 const MixedHardLabel& h, const DistillConfig& cfg) {
  const double base = kd_aug_loss(student_logits, teacher_logits, h, cfg);
  return base + cfg.sigma * order_penalty(student_logits, h);
}

Vector kd_loss_grad(const LabelDistribution& student_logits,
                    const LabelDistribution& teacher_logits,
                    const LabelDistribution& y, const DistillConfig& cfg) {
  cfg.validate();
  check_same_length(student_logits, teacher_logits, "kd_loss_grad");
  check_same_length(student_logits, y, "kd_loss_grad");
  const Vector teacher_tau = softmax_values(teacher_logits.values(), cfg.tau);
  Vector g = cfg.alpha * cfg.tau * cfg.tau *
             ce_softmax_grad(student_logits.values(), teacher_tau, cfg.tau);
  g += (1.0 - cfg.alpha) * ce_softmax_grad(student_logits.values(), y.values(), 1.0);
  return g;
}

Vector kd_aug_loss_grad(const LabelDistribution& student_logits,
                        const LabelDistribution& teacher_logits,
                        const MixedHardLabel& h, const DistillConfig& cfg) {
  return kd_loss_grad(student_logits, teacher_logits, expand_hard_label(h), cfg);
}

Vector kd_i_loss_grad(const LabelDistribution& student_logits,
                      const LabelDistribution& teacher_logits,
                      const MixedHardLabel& h, const DistillConfig& cfg,
                      CalibratedTermKind kind) {
  Vector g = kd_aug_loss_grad(student_logits, teacher_logits, h, cfg);
  if (kind == CalibratedTermKind::student_vs_calibrated && cfg.beta != 0.0) {
    const LabelDistribution m_hat = calibrated_target(teacher_logits, h, cfg);
    g += cfg.beta *
         ce_softmax_grad(student_logits.values(), m_hat.values(), cfg.tau);
  }
  return g;
}

Vector kd_p_loss_grad(const LabelDistribution& student_logits,
                      const LabelDistribution& teacher_logits,
                      const MixedHardLabel& h, const DistillConfig& cfg) {
  Vector g = kd_aug_loss_grad(student_logits, teacher_logits, h, cfg);
  if (cfg.sigma != 0.0) {
    g += cfg.sigma * order_penalty_gradient(student_logits, h);
  }
  return g;
}

}  // namespace isokd
