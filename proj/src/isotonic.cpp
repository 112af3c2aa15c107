#include "isokd/isotonic.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace isokd {

namespace {

void check_dims(const LabelDistribution& soft, const OrderTree& tree) {
  if (soft.size() != tree.num_labels()) {
    throw std::invalid_argument("soft label length does not match tree size");
  }
}

// Mean of the input values of a member set, summed in ascending label order
// so that equal partitions always produce bit-identical block values.
double exact_block_mean(const Vector& v, const std::vector<Index>& members) {
  double sum = 0.0;
  for (Index i : members) sum += v[i];
  return sum / static_cast<double>(members.size());
}

}  // namespace

IsotonicResult adapted_irt(const LabelDistribution& soft, const OrderTree& tree) {
  check_dims(soft, tree);
  const Vector& v = soft.values();
  const Index c = v.size();
  const Index a = tree.root();
  const Index b = tree.second();

  // Leaves in descending value order; ties broken by ascending label index.
  std::vector<Index> leaves;
  leaves.reserve(static_cast<std::size_t>(c - 2));
  for (Index i = 0; i < c; ++i) {
    if (i != a && i != b) leaves.push_back(i);
  }
  std::sort(leaves.begin(), leaves.end(), [&v](Index l, Index r) {
    if (v[l] != v[r]) return v[l] > v[r];
    return l < r;
  });

  int merges = 0;
  std::size_t k = 0;

  // Absorb leaves that beat the running mean of label_b's block.
  double m2 = v[b];
  Index n2 = 1;
  std::size_t absorbed_by_b = 0;
  while (k < leaves.size() && m2 < v[leaves[k]]) {
    m2 = (m2 * static_cast<double>(n2) + v[leaves[k]]) / static_cast<double>(n2 + 1);
    ++n2;
    ++k;
    ++absorbed_by_b;
    ++merges;
  }

  // If label_a now sits below the block, merge and keep absorbing.
  bool merged_ab = false;
  double m1 = v[a];
  Index n1 = 1;
  if (m1 < m2) {
    m1 = (m1 + m2 * static_cast<double>(n2)) / static_cast<double>(n2 + 1);
    n1 = n2 + 1;
    merged_ab = true;
    ++merges;
    while (k < leaves.size() && m1 < v[leaves[k]]) {
      m1 = (m1 * static_cast<double>(n1) + v[leaves[k]]) / static_cast<double>(n1 + 1);
      ++n1;
      ++k;
      ++merges;
    }
  }

  // Assemble the partition. `k` leaves were absorbed in total.
  BlockPartition blocks;
  blocks.block_of.assign(static_cast<std::size_t>(c), -1);

  std::vector<Index> merged_members;
  if (merged_ab) {
    merged_members.push_back(a);
    merged_members.push_back(b);
    for (std::size_t t = 0; t < k; ++t) merged_members.push_back(leaves[t]);
  } else {
    merged_members.push_back(b);
    for (std::size_t t = 0; t < absorbed_by_b; ++t) merged_members.push_back(leaves[t]);
  }
  std::sort(merged_members.begin(), merged_members.end());

  Vector out = v;
  const Index merged_id = merged_members.front();
  const double merged_value = exact_block_mean(v, merged_members);
  for (Index i : merged_members) {
    blocks.block_of[static_cast<std::size_t>(i)] = merged_id;
    out[i] = merged_value;
  }
  blocks.block_value[merged_id] = merged_value;
  blocks.block_size[merged_id] = static_cast<Index>(merged_members.size());

  // Singleton blocks, inserted in ascending key order with an end hint.
  for (Index i = 0; i < c; ++i) {
    if (blocks.block_of[static_cast<std::size_t>(i)] >= 0) continue;
    blocks.block_of[static_cast<std::size_t>(i)] = i;
    blocks.block_value.emplace_hint(blocks.block_value.end(), i, v[i]);
    blocks.block_size.emplace_hint(blocks.block_size.end(), i, 1);
  }

  return IsotonicResult{LabelDistribution(std::move(out), soft.space()),
                        std::move(blocks), merges};
}

LabelDistribution brute_force_projection(const LabelDistribution& soft,
                                         const OrderTree& tree) {
  check_dims(soft, tree);
  const Index c = soft.size();
  if (c > 12) {
    throw std::invalid_argument(
        "brute_force_projection: refusing more than 12 labels");
  }
  const Vector& v = soft.values();
  const auto edges = tree.edges();
  const std::size_t n_edges = edges.size();
  constexpr double kFeasTol = 1e-12;

  Vector best;
  double best_err = std::numeric_limits<double>::infinity();

  std::vector<Index> parent(static_cast<std::size_t>(c));
  std::vector<Index> comp_rep(static_cast<std::size_t>(c));
  std::vector<std::vector<Index>> comp_members(static_cast<std::size_t>(c));

  const auto find = [&parent](Index x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      x = parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    }
    return x;
  };

  for (std::uint64_t mask = 0; mask < (1ULL << n_edges); ++mask) {
    std::iota(parent.begin(), parent.end(), Index{0});
    for (std::size_t e = 0; e < n_edges; ++e) {
      if (mask & (1ULL << e)) {
        const Index ri = find(edges[e].first);
        const Index rj = find(edges[e].second);
        if (ri != rj) parent[static_cast<std::size_t>(std::max(ri, rj))] = std::min(ri, rj);
      }
    }
    for (auto& m : comp_members) m.clear();
    for (Index i = 0; i < c; ++i) {
      comp_rep[static_cast<std::size_t>(i)] = find(i);
      comp_members[static_cast<std::size_t>(comp_rep[static_cast<std::size_t>(i)])]
          .push_back(i);
    }

    Vector candidate(c);
    for (Index i = 0; i < c; ++i) {
      const auto& members = comp_members[static_cast<std::size_t>(i)];
      if (members.empty()) continue;
      const double mean = exact_block_mean(v, members);
      for (Index m : members) candidate[m] = mean;
    }

    bool feasible = true;
    for (const auto& [hi, lo] : edges) {
      if (candidate[hi] < candidate[lo] - kFeasTol) {
        feasible = false;
        break;
      }
    }
    if (!feasible) continue;

    const double err = (candidate - v).squaredNorm();
    if (err < best_err) {
      best_err = err;
      best = std::move(candidate);
    }
  }

  return LabelDistribution(std::move(best), soft.space());
}

int count_violations(const LabelDistribution& soft, const OrderTree& tree) {
  check_dims(soft, tree);
  const Vector& v = soft.values();
  int count = 0;
  if (v[tree.root()] < v[tree.second()]) ++count;
  for (Index i = 0; i < tree.num_labels(); ++i) {
    if (i == tree.root() || i == tree.second()) continue;
    if (v[tree.second()] < v[i]) ++count;
  }
  return count;
}

}  // namespace isokd
