#pragma once

#include <map>

#include "isokd/types.hpp"

namespace isokd {

/// Node-block structure produced by the tree projection. Blocks partition
/// the label set; every member of a block is assigned the arithmetic mean
/// of the members' input values. Block ids are the smallest member index.
struct BlockPartition {
  std::vector<Index> block_of;          // label -> block id
  std::map<Index, double> block_value;  // block id -> common value
  std::map<Index, Index> block_size;    // block id -> member count
};

struct IsotonicResult {
  LabelDistribution calibrated;
  BlockPartition blocks;
  int violations_found;  // block merges performed
};

/// Least-squares projection of `soft` onto the order constraints of `tree`,
/// specialized to the star-plus-edge tree: one descending sort of the leaf
/// values followed by sequential block absorption, O(c log c) total.
/// Probability input stays a probability vector (block averaging preserves
/// nonnegativity and the total); raw logit vectors are projected as-is.
IsotonicResult adapted_irt(const LabelDistribution& soft, const OrderTree& tree);

/// Exhaustive oracle for the same projection: enumerates every subset of
/// tree edges as candidate active constraints, solves each in closed form
/// (component means), filters for feasibility and returns the candidate
/// with least squared error. Exponential; refuses more than 12 labels.
LabelDistribution brute_force_projection(const LabelDistribution& soft,
                                         const OrderTree& tree);

/// Number of tree edges (i, j) with soft[i] < soft[j], strict comparison.
int count_violations(const LabelDistribution& soft, const OrderTree& tree);

}  // namespace isokd
