#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isokd/losses.hpp"
#include "isokd/random.hpp"
#include "isokd/types.hpp"

namespace isokd {

/// Two-layer rectifier MLP with manually derived backpropagation.
/// forward(x) yields raw logits.
class Mlp {
 public:
  Mlp(Index input_dim, Index hidden_dim, Index output_dim, RandomSource& rng);

  LabelDistribution forward(const Vector& x) const;
  Vector forward_logits(const Vector& x) const;

  Index input_dim() const { return w1.rows(); }
  Index hidden_dim() const { return w1.cols(); }
  Index output_dim() const { return w2.cols(); }

  Matrix w1;  // input_dim x hidden_dim
  Vector b1;  // hidden_dim
  Matrix w2;  // hidden_dim x output_dim
  Vector b2;  // output_dim
};

struct MlpGradients {
  Matrix w1;
  Vector b1;
  Matrix w2;
  Vector b2;
};

/// Backpropagates a logit-space gradient through the network for one input.
/// Accumulates into `grads`.
void backprop(const Mlp& net, const Vector& x, const Vector& logit_grad,
              MlpGradients& grads);

MlpGradients zero_gradients(const Mlp& net);

/// Gaussian cluster classification data. `labels` are the clean targets used
/// for distillation and evaluation; `teacher_labels` have a fraction flipped
/// uniformly to another class and are what the teacher trains on.
struct SyntheticDataset {
  Matrix train_x;  // one row per sample
  std::vector<Index> labels;
  std::vector<Index> teacher_labels;
  Matrix test_x;
  std::vector<Index> test_labels;
  Index num_classes = 0;
  Index dim = 0;
};

struct SyntheticSpec {
  std::uint64_t seed = 1;
  Index n_train = 480;
  Index n_test = 960;
  Index dim = 8;
  Index num_classes = 6;
  double overlap = 1.0;      // cluster noise scale relative to unit spread
  double label_noise = 0.0;  // fraction of teacher-training labels flipped
};

SyntheticDataset make_synthetic(const SyntheticSpec& spec);

enum class DistillMode { kd, kd_aug, kd_i, kd_p };
enum class Augmentation { mixup, cutmix };

DistillMode parse_distill_mode(const std::string& s);
Augmentation parse_augmentation(const std::string& s);
std::string to_string(DistillMode mode);
std::string to_string(Augmentation aug);

struct EpochMetrics {
  int epoch = 0;
  double train_loss = 0.0;
  double test_accuracy = 0.0;  // percent
};

struct TrainOptions {
  int epochs = 60;
  double learning_rate = 0.1;
  Index batch_size = 32;
  Index hidden_dim = 16;
  double mixing_alpha = 1.0;             // Beta(a, a) parameter
  std::optional<double> fixed_gamma;     // overrides the Beta draw when set
  double calibration_fraction = 1.0;     // share of samples given the
                                         // calibrated-target term (kd_i)
};

struct TrainResult {
  Mlp model;
  std::vector<EpochMetrics> metrics;
};

/// Plain cross-entropy SGD on the (possibly noise-flipped) teacher labels.
TrainResult train_teacher(const SyntheticDataset& ds, int epochs, double lr,
                          std::uint64_t seed, Index hidden_dim = 16,
                          Index batch_size = 32);

/// Distills `teacher` into a fresh student under the selected objective.
/// Deterministic per (seed, options); the learning rate decays by 0.2 at
/// 30%, 60% and 80% of the epochs.
TrainResult distill(const Mlp& teacher, const SyntheticDataset& ds,
                    DistillMode mode, const DistillConfig& cfg,
                    Augmentation augmentation, std::uint64_t seed,
                    const TrainOptions& options);

/// Fraction of correctly classified test samples, in percent.
double test_accuracy(const Mlp& net, const SyntheticDataset& ds);

}  // namespace isokd
