#pragma once

#include "isokd/random.hpp"
#include "isokd/types.hpp"

namespace isokd {

/// Per-sample order statistics between a soft distribution and its hard
/// label. Known pairs are every pair involving at least one original label:
/// 2c-3 of them for a genuine mix, c-1 when gamma = 1 collapses the hard
/// label to one-hot.
struct ViolationReport {
  double kendall_tau = 0.0;
  bool top2_hit = false;
  int violation_count = 0;
  int known_pair_count = 0;
};

/// Kendall's tau restricted to known pairs: (concordant - discordant) /
/// known pairs, with soft ties counting as neither.
double kendall_tau_known(const LabelDistribution& soft, const MixedHardLabel& h);

/// True when label_a or label_b lands in the two largest soft values
/// (value ties broken toward the lower index).
bool top2_contains_original(const LabelDistribution& soft, const MixedHardLabel& h);

ViolationReport diagnose_sample(const LabelDistribution& soft,
                                const MixedHardLabel& h);

/// Deterministic exact-count subset selection: marks round(fraction * n)
/// of n items, uniformly at random from the given stream.
std::vector<bool> select_fraction(Index n, double fraction, RandomSource& rng);

/// Applies the tree projection to a uniformly random round(fraction * n)
/// subset of the batch; the rest pass through untouched.
std::vector<LabelDistribution> calibrate_fraction(
    const std::vector<std::pair<LabelDistribution, MixedHardLabel>>& batch,
    double fraction, RandomSource& rng);

}  // namespace isokd
