#pragma once

#include "isokd/types.hpp"

namespace isokd {

/// Hinge relaxation of the order constraints on the student's logits:
///   max(0, s_b - s_a) + max(0, max(non-original) - min(s_a, s_b)).
/// Zero exactly when every constraint of the order tree holds. One pass,
/// O(c).
double order_penalty(const LabelDistribution& student_logits,
                     const MixedHardLabel& h);

/// Subgradient of order_penalty with respect to the logits. A hinge counts
/// as active only when its argument is strictly positive; ties between
/// extrema route the gradient to the lowest label index.
Vector order_penalty_gradient(const LabelDistribution& student_logits,
                              const MixedHardLabel& h);

}  // namespace isokd
