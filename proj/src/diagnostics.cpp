#include "isokd/diagnostics.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "isokd/isotonic.hpp"

namespace isokd {

namespace {

void check_dims(const LabelDistribution& soft, const MixedHardLabel& h) {
  if (soft.size() != h.num_labels()) {
    throw std::invalid_argument("soft label length does not match hard label");
  }
}

// Adds the pair (hi above lo) to the concordant/discordant tally.
void tally(const Vector& v, Index hi, Index lo, int& concordant, int& discordant) {
  if (v[hi] > v[lo]) {
    ++concordant;
  } else if (v[hi] < v[lo]) {
    ++discordant;
  }
}

}  // namespace

double kendall_tau_known(const LabelDistribution& soft, const MixedHardLabel& h) {
  check_dims(soft, h);
  const Vector& v = soft.values();
  const Index c = h.num_labels();
  const Index a = h.label_a();
  const Index b = h.label_b();

  int concordant = 0;
  int discordant = 0;
  int pairs = 0;
  if (h.gamma() == 1.0) {
    // One-hot: only pairs against the single positive label are known.
    for (Index i = 0; i < c; ++i) {
      if (i == a) continue;
      tally(v, a, i, concordant, discordant);
      ++pairs;
    }
  } else {
    tally(v, a, b, concordant, discordant);
    ++pairs;
    for (Index i = 0; i < c; ++i) {
      if (i == a || i == b) continue;
      tally(v, a, i, concordant, discordant);
      tally(v, b, i, concordant, discordant);
      pairs += 2;
    }
  }
  return static_cast<double>(concordant - discordant) / static_cast<double>(pairs);
}

bool top2_contains_original(const LabelDistribution& soft, const MixedHardLabel& h) {
  check_dims(soft, h);
  const Vector& v = soft.values();
  const Index c = h.num_labels();
  if (c == 2) return true;

  Index first = 0;
  for (Index i = 1; i < c; ++i) {
    if (v[i] > v[first]) first = i;
  }
  Index second = -1;
  for (Index i = 0; i < c; ++i) {
    if (i == first) continue;
    if (second < 0 || v[i] > v[second]) second = i;
  }
  return first == h.label_a() || first == h.label_b() || second == h.label_a() ||
         second == h.label_b();
}

ViolationReport diagnose_sample(const LabelDistribution& soft,
                                const MixedHardLabel& h) {
  check_dims(soft, h);
  ViolationReport report;
  report.kendall_tau = kendall_tau_known(soft, h);
  report.top2_hit = top2_contains_original(soft, h);
  report.violation_count = count_violations(soft, build_order_tree(h));
  report.known_pair_count = h.gamma() == 1.0
                                ? static_cast<int>(h.num_labels()) - 1
                                : 2 * static_cast<int>(h.num_labels()) - 3;
  return report;
}

std::vector<bool> select_fraction(Index n, double fraction, RandomSource& rng) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("select_fraction: fraction must lie in [0, 1]");
  }
  if (n < 0) throw std::invalid_argument("select_fraction: negative count");
  const auto k = static_cast<Index>(
      std::lround(fraction * static_cast<double>(n)));

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  for (Index i = 0; i < k; ++i) {
    const Index j = i + rng.uniform_index(n - i);
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  }
  std::vector<bool> selected(static_cast<std::size_t>(n), false);
  for (Index i = 0; i < k; ++i) selected[static_cast<std::size_t>(order[i])] = true;
  return selected;
}

std::vector<LabelDistribution> calibrate_fraction(
    const std::vector<std::pair<LabelDistribution, MixedHardLabel>>& batch,
    double fraction, RandomSource& rng) {
  const auto selected = select_fraction(static_cast<Index>(batch.size()), fraction, rng);
  std::vector<LabelDistribution> out;
  out.reserve(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const auto& [soft, h] = batch[i];
    if (selected[i]) {
      out.push_back(adapted_irt(soft, build_order_tree(h)).calibrated);
    } else {
      out.push_back(soft);
    }
  }
  return out;
}

}  // namespace isokd
