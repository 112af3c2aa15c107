#pragma once

#include <Eigen/Core>

#include <utility>
#include <vector>

namespace isokd {

using Index = Eigen::Index;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vector = VectorX<double>;
using Matrix = MatrixX<double>;

enum class LabelSpace { probability, logit };

/// Length-c score vector over the label space, tagged with the space it
/// lives in. Probability vectors must be nonnegative and sum to 1 (1e-9).
class LabelDistribution {
 public:
  LabelDistribution(Vector values, LabelSpace space);

  static LabelDistribution probabilities(Vector values) {
    return LabelDistribution(std::move(values), LabelSpace::probability);
  }
  static LabelDistribution logits(Vector values) {
    return LabelDistribution(std::move(values), LabelSpace::logit);
  }

  const Vector& values() const { return values_; }
  LabelSpace space() const { return space_; }
  Index size() const { return values_.size(); }
  double operator[](Index i) const { return values_[i]; }

 private:
  Vector values_;
  LabelSpace space_;
};

/// Two-label hard distribution of a mixed sample: weight gamma on label_a,
/// 1-gamma on label_b. Construction normalizes gamma into [0.5, 1] by
/// swapping the labels when the caller supplies gamma < 0.5; gamma == 0.5
/// keeps the caller's order.
class MixedHardLabel {
 public:
  MixedHardLabel(Index label_a, Index label_b, double gamma, Index num_labels);

  Index label_a() const { return label_a_; }
  Index label_b() const { return label_b_; }
  double gamma() const { return gamma_; }
  Index num_labels() const { return num_labels_; }

  bool operator==(const MixedHardLabel& other) const = default;

 private:
  Index label_a_;
  Index label_b_;
  double gamma_;
  Index num_labels_;
};

/// Order constraints of a mixed sample: root >= second and
/// second >= leaf for every remaining label. c - 1 edges, each edge (i, j)
/// meaning "value at i must not be below value at j".
class OrderTree {
 public:
  OrderTree(Index root, Index second, Index num_labels);

  Index root() const { return root_; }
  Index second() const { return second_; }
  Index num_labels() const { return num_labels_; }
  Index edge_count() const { return num_labels_ - 1; }

  std::vector<std::pair<Index, Index>> edges() const;

 private:
  Index root_;
  Index second_;
  Index num_labels_;
};

/// W x H x C numeric grid standing in for an image. Stored channel-major:
/// plane ch, then row y, then column x.
class SampleTensor {
 public:
  SampleTensor(Index width, Index height, Index channels);
  SampleTensor(Index width, Index height, Index channels, Eigen::ArrayXd data);

  Index width() const { return width_; }
  Index height() const { return height_; }
  Index channels() const { return channels_; }
  bool same_shape(const SampleTensor& other) const {
    return width_ == other.width_ && height_ == other.height_ &&
           channels_ == other.channels_;
  }

  double& at(Index x, Index y, Index ch) {
    return data_[(ch * height_ + y) * width_ + x];
  }
  double at(Index x, Index y, Index ch) const {
    return data_[(ch * height_ + y) * width_ + x];
  }

  Eigen::ArrayXd& data() { return data_; }
  const Eigen::ArrayXd& data() const { return data_; }

 private:
  Index width_;
  Index height_;
  Index channels_;
  Eigen::ArrayXd data_;
};

/// Expands the two-point hard label to a probability vector:
/// gamma at label_a, 1-gamma at label_b, zero elsewhere.
LabelDistribution expand_hard_label(const MixedHardLabel& h);

/// Builds the constraint tree of a mixed sample: label_a over label_b,
/// label_b over every other label.
OrderTree build_order_tree(const MixedHardLabel& h);

}  // namespace isokd
