#include "isokd/harness.hpp"

#include <cmath>
#include <stdexcept>

#include "isokd/augment.hpp"
#include "isokd/diagnostics.hpp"

namespace isokd {

namespace {

Vector relu(const Vector& z) { return z.cwiseMax(0.0); }

LabelDistribution one_hot(Index label, Index c) {
  Vector v = Vector::Zero(c);
  v[label] = 1.0;
  return LabelDistribution::probabilities(std::move(v));
}

void shuffle_indices(std::vector<Index>& idx, RandomSource& rng) {
  for (Index i = static_cast<Index>(idx.size()) - 1; i > 0; --i) {
    const Index j = rng.uniform_index(i + 1);
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
}

// Learning rate decayed by 0.2 at 30%, 60% and 80% of the run.
double scheduled_lr(double base, int epoch, int total_epochs) {
  const int p30 = static_cast<int>(0.3 * total_epochs);
  const int p60 = static_cast<int>(0.6 * total_epochs);
  const int p80 = static_cast<int>(0.8 * total_epochs);
  double lr = base;
  if (epoch >= p30) lr *= 0.2;
  if (epoch >= p60) lr *= 0.2;
  if (epoch >= p80) lr *= 0.2;
  return lr;
}

void sgd_step(Mlp& net, const MlpGradients& grads, double lr, double inv_batch) {
  net.w1 -= lr * inv_batch * grads.w1;
  net.b1 -= lr * inv_batch * grads.b1;
  net.w2 -= lr * inv_batch * grads.w2;
  net.b2 -= lr * inv_batch * grads.b2;
}

// Uniform pair with distinct labels; pairs sharing a label are redrawn
// because the mixed hard label needs two distinct originals.
std::pair<Index, Index> sample_pair(const std::vector<Index>& labels,
                                    RandomSource& rng) {
  const auto n = static_cast<Index>(labels.size());
  for (;;) {
    const Index i = rng.uniform_index(n);
    Index j = rng.uniform_index(n - 1);
    if (j >= i) ++j;
    if (labels[static_cast<std::size_t>(i)] != labels[static_cast<std::size_t>(j)]) {
      return {i, j};
    }
  }
}

SampleTensor to_square_tensor(const Vector& x, Index side) {
  return SampleTensor(side, side, 1, x.array());
}

}  // namespace

Mlp::Mlp(Index input_dim, Index hidden_dim, Index output_dim, RandomSource& rng) {
  if (input_dim < 1 || hidden_dim < 1 || output_dim < 2) {
    throw std::invalid_argument("Mlp: bad dimensions");
  }
  // He-style scaled Gaussian init, biases at zero.
  const double s1 = std::sqrt(2.0 / static_cast<double>(input_dim));
  const double s2 = std::sqrt(2.0 / static_cast<double>(hidden_dim));
  w1.resize(input_dim, hidden_dim);
  for (Index i = 0; i < input_dim; ++i) {
    for (Index j = 0; j < hidden_dim; ++j) w1(i, j) = s1 * rng.normal();
  }
  b1 = Vector::Zero(hidden_dim);
  w2.resize(hidden_dim, output_dim);
  for (Index i = 0; i < hidden_dim; ++i) {
    for (Index j = 0; j < output_dim; ++j) w2(i, j) = s2 * rng.normal();
  }
  b2 = Vector::Zero(output_dim);
}

Vector Mlp::forward_logits(const Vector& x) const {
  if (x.size() != input_dim()) {
    throw std::invalid_argument("Mlp::forward: input dimension mismatch");
  }
  const Vector hidden = relu(w1.transpose() * x + b1);
  return w2.transpose() * hidden + b2;
}

LabelDistribution Mlp::forward(const Vector& x) const {
  return LabelDistribution::logits(forward_logits(x));
}

MlpGradients zero_gradients(const Mlp& net) {
  return MlpGradients{Matrix::Zero(net.w1.rows(), net.w1.cols()),
                      Vector::Zero(net.b1.size()),
                      Matrix::Zero(net.w2.rows(), net.w2.cols()),
                      Vector::Zero(net.b2.size())};
}

void backprop(const Mlp& net, const Vector& x, const Vector& logit_grad,
              MlpGradients& grads) {
  const Vector z = net.w1.transpose() * x + net.b1;
  const Vector hidden = relu(z);
  grads.w2.noalias() += hidden * logit_grad.transpose();
  grads.b2 += logit_grad;
  Vector dz = net.w2 * logit_grad;
  for (Index i = 0; i < dz.size(); ++i) {
    if (z[i] <= 0.0) dz[i] = 0.0;
  }
  grads.w1.noalias() += x * dz.transpose();
  grads.b1 += dz;
}

SyntheticDataset make_synthetic(const SyntheticSpec& spec) {
  if (spec.n_train < 1 || spec.n_test < 0 || spec.dim < 1 || spec.num_classes < 2) {
    throw std::invalid_argument("make_synthetic: bad dataset shape");
  }
  if (!(spec.label_noise >= 0.0 && spec.label_noise <= 1.0)) {
    throw std::invalid_argument("make_synthetic: label_noise must lie in [0, 1]");
  }
  RandomSource base(spec.seed);
  RandomSource rng_means = base.fork(0x6d65616eULL);
  RandomSource rng_train = base.fork(0x747261696eULL);
  RandomSource rng_test = base.fork(0x74657374ULL);
  RandomSource rng_noise = base.fork(0x6e6f697365ULL);

  Matrix means(spec.num_classes, spec.dim);
  for (Index k = 0; k < spec.num_classes; ++k) {
    for (Index j = 0; j < spec.dim; ++j) means(k, j) = rng_means.normal();
  }

  const auto draw_split = [&](Index n, RandomSource& rng, Matrix& x,
                              std::vector<Index>& y) {
    x.resize(n, spec.dim);
    y.resize(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
      const Index label = i % spec.num_classes;
      y[static_cast<std::size_t>(i)] = label;
      for (Index j = 0; j < spec.dim; ++j) {
        x(i, j) = means(label, j) + spec.overlap * rng.normal();
      }
    }
  };

  SyntheticDataset ds;
  ds.num_classes = spec.num_classes;
  ds.dim = spec.dim;
  draw_split(spec.n_train, rng_train, ds.train_x, ds.labels);
  draw_split(spec.n_test, rng_test, ds.test_x, ds.test_labels);

  ds.teacher_labels = ds.labels;
  for (auto& label : ds.teacher_labels) {
    if (rng_noise.uniform() < spec.label_noise) {
      label = (label + 1 + rng_noise.uniform_index(spec.num_classes - 1)) %
              spec.num_classes;
    }
  }
  return ds;
}

DistillMode parse_distill_mode(const std::string& s) {
  if (s == "kd") return DistillMode::kd;
  if (s == "kd_aug") return DistillMode::kd_aug;
  if (s == "kd_i") return DistillMode::kd_i;
  if (s == "kd_p") return DistillMode::kd_p;
  throw std::invalid_argument("unknown distillation mode: " + s);
}

Augmentation parse_augmentation(const std::string& s) {
  if (s == "mixup") return Augmentation::mixup;
  if (s == "cutmix") return Augmentation::cutmix;
  throw std::invalid_argument("unknown augmentation: " + s);
}

std::string to_string(DistillMode mode) {
  switch (mode) {
    case DistillMode::kd: return "kd";
    case DistillMode::kd_aug: return "kd_aug";
    case DistillMode::kd_i: return "kd_i";
    case DistillMode::kd_p: return "kd_p";
  }
  return "?";
}

std::string to_string(Augmentation aug) {
  return aug == Augmentation::mixup ? "mixup" : "cutmix";
}

double test_accuracy(const Mlp& net, const SyntheticDataset& ds) {
  if (ds.test_x.rows() == 0) return 0.0;
  Index hits = 0;
  for (Index i = 0; i < ds.test_x.rows(); ++i) {
    const Vector logits = net.forward_logits(ds.test_x.row(i).transpose());
    Index best = 0;
    for (Index k = 1; k < logits.size(); ++k) {
      if (logits[k] > logits[best]) best = k;
    }
    if (best == ds.test_labels[static_cast<std::size_t>(i)]) ++hits;
  }
  return 100.0 * static_cast<double>(hits) / static_cast<double>(ds.test_x.rows());
}

TrainResult train_teacher(const SyntheticDataset& ds, int epochs, double lr,
                          std::uint64_t seed, Index hidden_dim, Index batch_size) {
  if (ds.train_x.rows() == 0) {
    throw std::invalid_argument("train_teacher: empty dataset");
  }
  if (epochs < 1) throw std::invalid_argument("train_teacher: epochs must be >= 1");

  RandomSource base(seed);
  RandomSource rng_init = base.fork(0x696e6974ULL);
  RandomSource rng_data = base.fork(0x64617461ULL);

  Mlp net(ds.dim, hidden_dim, ds.num_classes, rng_init);
  const Index n = ds.train_x.rows();
  std::vector<Index> order(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;

  TrainResult result{net, {}};
  for (int epoch = 0; epoch < epochs; ++epoch) {
    const double cur_lr = scheduled_lr(lr, epoch, epochs);
    shuffle_indices(order, rng_data);
    double loss_sum = 0.0;
    Index loss_count = 0;
    for (Index start = 0; start < n; start += batch_size) {
      const Index stop = std::min(n, start + batch_size);
      MlpGradients grads = zero_gradients(result.model);
      for (Index t = start; t < stop; ++t) {
        const Index i = order[static_cast<std::size_t>(t)];
        const Vector x = ds.train_x.row(i).transpose();
        const Vector logits = result.model.forward_logits(x);
        const LabelDistribution target =
            one_hot(ds.teacher_labels[static_cast<std::size_t>(i)], ds.num_classes);
        loss_sum += cross_entropy(softmax_t(LabelDistribution::logits(logits), 1.0),
                                  target);
        ++loss_count;
        const Vector g =
            softmax_t(LabelDistribution::logits(logits), 1.0).values() -
            target.values();
        backprop(result.model, x, g, grads);
      }
      sgd_step(result.model, grads, cur_lr,
               1.0 / static_cast<double>(stop - start));
    }
    result.metrics.push_back(EpochMetrics{
        epoch, loss_sum / static_cast<double>(loss_count),
        test_accuracy(result.model, ds)});
  }
  return result;
}

TrainResult distill(const Mlp& teacher, const SyntheticDataset& ds,
                    DistillMode mode, const DistillConfig& cfg,
                    Augmentation augmentation, std::uint64_t seed,
                    const TrainOptions& options) {
  cfg.validate();
  if (teacher.input_dim() != ds.dim || teacher.output_dim() != ds.num_classes) {
    throw std::invalid_argument("distill: teacher does not match the dataset");
  }
  if (options.epochs < 1 || options.batch_size < 1) {
    throw std::invalid_argument("distill: bad training options");
  }
  if (!(options.calibration_fraction >= 0.0 && options.calibration_fraction <= 1.0)) {
    throw std::invalid_argument("distill: calibration fraction outside [0, 1]");
  }
  if (ds.train_x.rows() == 0 ||
      ds.labels.size() != static_cast<std::size_t>(ds.train_x.rows())) {
    throw std::invalid_argument("distill: malformed dataset");
  }
  bool two_labels = false;
  for (const Index label : ds.labels) {
    if (label != ds.labels.front()) {
      two_labels = true;
      break;
    }
  }
  if (!two_labels) {
    throw std::invalid_argument("distill: need at least two distinct labels");
  }
  Index side = 0;
  if (augmentation == Augmentation::cutmix) {
    side = static_cast<Index>(std::lround(std::sqrt(static_cast<double>(ds.dim))));
    if (side * side != ds.dim) {
      throw std::invalid_argument(
          "distill: cutmix needs a perfect-square feature count");
    }
  }

  RandomSource base(seed);
  RandomSource rng_init = base.fork(0x696e6974ULL);
  // Separate streams so the calibration subset never shifts the data draws:
  // kd_i consumes exactly the same data stream as kd_aug.
  RandomSource rng_data = base.fork(0x64617461ULL);
  RandomSource rng_select = base.fork(0x73656c6563ULL);

  TrainResult result{Mlp(ds.dim, options.hidden_dim, ds.num_classes, rng_init), {}};
  const Index n = ds.train_x.rows();
  const Index c = ds.num_classes;
  const Index steps_per_epoch = (n + options.batch_size - 1) / options.batch_size;

  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    const double cur_lr = scheduled_lr(options.learning_rate, epoch, options.epochs);
    double loss_sum = 0.0;
    Index loss_count = 0;
    for (Index step = 0; step < steps_per_epoch; ++step) {
      const std::vector<bool> calibrate_mask =
          mode == DistillMode::kd_i
              ? select_fraction(options.batch_size, options.calibration_fraction,
                                rng_select)
              : std::vector<bool>();
      MlpGradients grads = zero_gradients(result.model);
      for (Index slot = 0; slot < options.batch_size; ++slot) {
        auto [i, j] = sample_pair(ds.labels, rng_data);
        double gamma = 1.0;
        if (mode != DistillMode::kd) {
          gamma = options.fixed_gamma ? *options.fixed_gamma
                                      : sample_gamma(options.mixing_alpha, rng_data);
          if (gamma < 0.5) {
            std::swap(i, j);
            gamma = 1.0 - gamma;
          }
        }

        const Vector x_i = ds.train_x.row(i).transpose();
        Vector x_tilde;
        double gamma_label = gamma;
        if (mode == DistillMode::kd) {
          x_tilde = x_i;
        } else if (augmentation == Augmentation::mixup) {
          x_tilde = gamma * x_i + (1.0 - gamma) * ds.train_x.row(j).transpose();
        } else {
          const Vector x_j = ds.train_x.row(j).transpose();
          const CutMixResult cut = cutmix(to_square_tensor(x_i, side),
                                          to_square_tensor(x_j, side), gamma,
                                          rng_data);
          x_tilde = cut.mixed.data().matrix();
          gamma_label = cut.effective_gamma;
        }

        const LabelDistribution teacher_logits = teacher.forward(x_tilde);
        const LabelDistribution student_logits = result.model.forward(x_tilde);

        double loss = 0.0;
        Vector logit_grad;
        if (mode == DistillMode::kd) {
          const LabelDistribution y =
              one_hot(ds.labels[static_cast<std::size_t>(i)], c);
          loss = kd_loss(student_logits, teacher_logits, y, cfg);
          logit_grad = kd_loss_grad(student_logits, teacher_logits, y, cfg);
        } else {
          const MixedHardLabel h(ds.labels[static_cast<std::size_t>(i)],
                                 ds.labels[static_cast<std::size_t>(j)],
                                 gamma_label, c);
          switch (mode) {
            case DistillMode::kd_aug:
              loss = kd_aug_loss(student_logits, teacher_logits, h, cfg);
              logit_grad = kd_aug_loss_grad(student_logits, teacher_logits, h, cfg);
              break;
            case DistillMode::kd_i:
              if (calibrate_mask[static_cast<std::size_t>(slot)]) {
                loss = kd_i_loss(student_logits, teacher_logits, h, cfg);
                logit_grad = kd_i_loss_grad(student_logits, teacher_logits, h, cfg);
              } else {
                loss = kd_aug_loss(student_logits, teacher_logits, h, cfg);
                logit_grad = kd_aug_loss_grad(student_logits, teacher_logits, h, cfg);
              }
              break;
            case DistillMode::kd_p:
              loss = kd_p_loss(student_logits, teacher_logits, h, cfg);
              logit_grad = kd_p_loss_grad(student_logits, teacher_logits, h, cfg);
              break;
            default:
              break;
          }
        }
        loss_sum += loss;
        ++loss_count;
        backprop(result.model, x_tilde, logit_grad, grads);
      }
      sgd_step(result.model, grads, cur_lr,
               1.0 / static_cast<double>(options.batch_size));
    }
    result.metrics.push_back(EpochMetrics{
        epoch, loss_sum / static_cast<double>(loss_count),
        test_accuracy(result.model, ds)});
  }
  return result;
}

}  // namespace isokd
