#pragma once

#include "isokd/isotonic.hpp"
#include "isokd/penalty.hpp"
#include "isokd/types.hpp"

namespace isokd {

/// Distillation hyperparameters. Defaults follow common distillation
/// practice: tau = 4.5, alpha = 0.95, beta = 3, sigma = 2.
struct DistillConfig {
  double tau = 4.5;    // softmax temperature of the soft loss
  double alpha = 0.95; // weight of the soft loss against the hard loss
  double beta = 3.0;   // weight of the calibrated-target term
  double sigma = 2.0;  // weight of the order penalty

  void validate() const;
};

/// How the calibrated-target term treats its cross entropy. The default
/// compares the student's tempered prediction against the calibrated soft
/// labels, which is the only reading with a student gradient; the literal
/// variant scores the hard label against the calibrated labels and is
/// constant in the student.
enum class CalibratedTermKind { student_vs_calibrated, literal_constant };

/// Temperature softmax, numerically stabilized by max subtraction.
LabelDistribution softmax_t(const LabelDistribution& logits, double tau);

/// -sum target_k * log(pred_k), predictions clamped below at 1e-12.
/// Both arguments must be probability vectors of equal length.
double cross_entropy(const LabelDistribution& pred, const LabelDistribution& target);

/// alpha * tau^2 * CE(student_tau, teacher_tau) + (1 - alpha) * CE(student, y).
double kd_loss(const LabelDistribution& student_logits,
               const LabelDistribution& teacher_logits,
               const LabelDistribution& y, const DistillConfig& cfg);

/// kd_loss against the expanded two-point hard label.
double kd_aug_loss(const LabelDistribution& student_logits,
                   const LabelDistribution& teacher_logits,
                   const MixedHardLabel& h, const DistillConfig& cfg);

/// kd_aug_loss + beta * CE(student_tau, m_hat), where m_hat is the teacher's
/// tempered distribution projected onto the sample's orderized tree.
double kd_i_loss(const LabelDistribution& student_logits,
                 const LabelDistribution& teacher_logits,
                 const MixedHardLabel& h, const DistillConfig& cfg,
                 CalibratedTermKind kind = CalibratedTermKind::student_vs_calibrated);

/// kd_aug_loss + sigma * order_penalty.
double kd_p_loss(const LabelDistribution& student_logits,
                 const LabelDistribution& teacher_logits,
                 const MixedHardLabel& h, const DistillConfig& cfg);

// Gradients with respect to the student logits, used by the training
// harness and checked against finite differences in the test suite.

Vector kd_loss_grad(const LabelDistribution& student_logits,
                    const LabelDistribution& teacher_logits,
                    const LabelDistribution& y, const DistillConfig& cfg);

Vector kd_aug_loss_grad(const LabelDistribution& student_logits,
                        const LabelDistribution& teacher_logits,
                        const MixedHardLabel& h, const DistillConfig& cfg);

Vector kd_i_loss_grad(const LabelDistribution& student_logits,
                      const LabelDistribution& teacher_logits,
                      const MixedHardLabel& h, const DistillConfig& cfg,
                      CalibratedTermKind kind = CalibratedTermKind::student_vs_calibrated);

Vector kd_p_loss_grad(const LabelDistribution& student_logits,
                      const LabelDistribution& teacher_logits,
                      const MixedHardLabel& h, const DistillConfig& cfg);

}  // namespace isokd
