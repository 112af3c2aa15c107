#include "isokd/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace isokd {

namespace {

constexpr double kProbabilitySumTol = 1e-9;

}  // namespace

LabelDistribution::LabelDistribution(Vector values, LabelSpace space)
    : values_(std::move(values)), space_(space) {
  if (values_.size() < 2) {
    throw std::invalid_argument("LabelDistribution: need at least 2 labels, got " +
                                std::to_string(values_.size()));
  }
  if (!values_.allFinite()) {
    throw std::invalid_argument("LabelDistribution: non-finite entry");
  }
  if (space_ == LabelSpace::probability) {
    if ((values_.array() < 0.0).any()) {
      throw std::invalid_argument("LabelDistribution: negative probability entry");
    }
    const double sum = values_.sum();
    if (std::abs(sum - 1.0) > kProbabilitySumTol) {
      throw std::invalid_argument("LabelDistribution: probabilities sum to " +
                                  std::to_string(sum) + ", expected 1");
    }
  }
}

MixedHardLabel::MixedHardLabel(Index label_a, Index label_b, double gamma,
                               Index num_labels) {
  if (num_labels < 2) {
    throw std::invalid_argument("MixedHardLabel: need at least 2 labels");
  }
  if (label_a < 0 || label_a >= num_labels || label_b < 0 || label_b >= num_labels) {
    throw std::invalid_argument("MixedHardLabel: label index out of range");
  }
  if (label_a == label_b) {
    throw std::invalid_argument(
        "MixedHardLabel: the two original labels must differ");
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("MixedHardLabel: gamma must lie in [0, 1]");
  }
  if (gamma < 0.5) {
    std::swap(label_a, label_b);
    gamma = 1.0 - gamma;
  }
  label_a_ = label_a;
  label_b_ = label_b;
  gamma_ = gamma;
  num_labels_ = num_labels;
}

OrderTree::OrderTree(Index root, Index second, Index num_labels)
    : root_(root), second_(second), num_labels_(num_labels) {
  if (num_labels < 2) {
    throw std::invalid_argument("OrderTree: need at least 2 labels");
  }
  if (root < 0 || root >= num_labels || second < 0 || second >= num_labels) {
    throw std::invalid_argument("OrderTree: node index out of range");
  }
  if (root == second) {
    throw std::invalid_argument("OrderTree: root and second must differ");
  }
}

std::vector<std::pair<Index, Index>> OrderTree::edges() const {
  std::vector<std::pair<Index, Index>> out;
  out.reserve(static_cast<std::size_t>(edge_count()));
  out.emplace_back(root_, second_);
  for (Index i = 0; i < num_labels_; ++i) {
    if (i != root_ && i != second_) out.emplace_back(second_, i);
  }
  return out;
}

SampleTensor::SampleTensor(Index width, Index height, Index channels)
    : width_(width),
      height_(height),
      channels_(channels),
      data_(Eigen::ArrayXd::Zero(width * height * channels)) {
  if (width < 1 || height < 1 || channels < 1) {
    throw std::invalid_argument("SampleTensor: all dimensions must be >= 1");
  }
}

SampleTensor::SampleTensor(Index width, Index height, Index channels,
                           Eigen::ArrayXd data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  if (width < 1 || height < 1 || channels < 1) {
    throw std::invalid_argument("SampleTensor: all dimensions must be >= 1");
  }
  if (data_.size() != width * height * channels) {
    throw std::invalid_argument("SampleTensor: data size does not match shape");
  }
  if (!data_.allFinite()) {
    throw std::invalid_argument("SampleTensor: non-finite entry");
  }
}

LabelDistribution expand_hard_label(const MixedHardLabel& h) {
  Vector v = Vector::Zero(h.num_labels());
  v[h.label_a()] = h.gamma();
  v[h.label_b()] = 1.0 - h.gamma();
  return LabelDistribution::probabilities(std::move(v));
}

OrderTree build_order_tree(const MixedHardLabel& h) {
  return OrderTree(h.label_a(), h.label_b(), h.num_labels());
}

}  // namespace isokd
