#include "isokd/penalty.hpp"

#include <stdexcept>

namespace isokd {

namespace {

struct PenaltyTerms {
  double gap_ab;        // s_b - s_a
  double gap_leaf;      // max leaf - min(s_a, s_b), 0 when c == 2
  Index max_leaf;       // lowest-index arg max over non-original labels, -1 if none
  Index min_original;   // lowest-index arg min of {s_a, s_b}
};

PenaltyTerms penalty_terms(const Vector& s, const MixedHardLabel& h) {
  if (s.size() != h.num_labels()) {
    throw std::invalid_argument("order_penalty: logit length does not match label");
  }
  const Index a = h.label_a();
  const Index b = h.label_b();

  PenaltyTerms t{};
  t.gap_ab = s[b] - s[a];
  if (s[a] < s[b]) {
    t.min_original = a;
  } else if (s[b] < s[a]) {
    t.min_original = b;
  } else {
    t.min_original = std::min(a, b);
  }

  t.max_leaf = -1;
  for (Index i = 0; i < s.size(); ++i) {
    if (i == a || i == b) continue;
    if (t.max_leaf < 0 || s[i] > s[t.max_leaf]) t.max_leaf = i;
  }
  t.gap_leaf = t.max_leaf >= 0 ? s[t.max_leaf] - s[t.min_original] : 0.0;
  return t;
}

}  // namespace

double order_penalty(const LabelDistribution& student_logits,
                     const MixedHardLabel& h) {
  const PenaltyTerms t = penalty_terms(student_logits.values(), h);
  double p = 0.0;
  if (t.gap_ab > 0.0) p += t.gap_ab;
  if (t.gap_leaf > 0.0) p += t.gap_leaf;
  return p;
}

Vector order_penalty_gradient(const LabelDistribution& student_logits,
                              const MixedHardLabel& h) {
  const PenaltyTerms t = penalty_terms(student_logits.values(), h);
  Vector g = Vector::Zero(student_logits.size());
  if (t.gap_ab > 0.0) {
    g[h.label_b()] += 1.0;
    g[h.label_a()] -= 1.0;
  }
  if (t.max_leaf >= 0 && t.gap_leaf > 0.0) {
    g[t.max_leaf] += 1.0;
    g[t.min_original] -= 1.0;
  }
  return g;
}

}  // namespace isokd
