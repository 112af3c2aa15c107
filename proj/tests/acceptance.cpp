// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "isokd/augment.hpp"
#include "isokd/cli.hpp"
#include "isokd/diagnostics.hpp"
#include "isokd/harness.hpp"
#include "isokd/io.hpp"
#include "isokd/isotonic.hpp"
#include "isokd/losses.hpp"
#include "isokd/penalty.hpp"
#include "isokd/random.hpp"

using namespace isokd;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures{ISOKD_FIXTURE_DIR};

int g_failures = 0;

class Criterion {
 public:
  Criterion(int number, std::string name)
      : number_(number), name_(std::move(name)),
        start_(std::chrono::steady_clock::now()) {}

  void require(bool condition, const std::string& detail) {
    if (!condition && failure_.empty()) failure_ = detail;
  }

  void note(const std::string& text) { notes_ = text; }

  ~Criterion() {
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    const bool pass = failure_.empty();
    if (!pass) ++g_failures;
    std::printf("[%s] criterion %d: %s (%.1fs)%s%s%s%s\n",
                pass ? "PASS" : "FAIL", number_, name_.c_str(), seconds,
                notes_.empty() ? "" : " | ", notes_.c_str(),
                pass ? "" : " | ", failure_.c_str());
    std::fflush(stdout);
  }

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  int number_;
  std::string name_;
  std::string failure_;
  std::string notes_;
  std::chrono::steady_clock::time_point start_;
};

void run_criterion(int number, const std::string& name,
                   const std::function<void(Criterion&)>& body) {
  Criterion criterion(number, name);
  try {
    body(criterion);
  } catch (const std::exception& e) {
    criterion.require(false, std::string("exception: ") + e.what());
  }
}

LabelDistribution random_probs(RandomSource& rng, Index c, bool skewed) {
  Vector v(c);
  for (Index i = 0; i < c; ++i) v[i] = skewed ? rng.gamma(0.1) : rng.uniform();
  const double total = v.sum();
  if (total <= 0.0) {
    v.setConstant(1.0 / static_cast<double>(c));
  } else {
    v /= total;
  }
  return LabelDistribution::probabilities(std::move(v));
}

LabelDistribution random_logits(RandomSource& rng, Index c) {
  Vector v(c);
  for (Index i = 0; i < c; ++i) v[i] = 2.0 * rng.normal();
  return LabelDistribution::logits(std::move(v));
}

OrderTree random_tree(RandomSource& rng, Index c) {
  const Index a = rng.uniform_index(c);
  Index b = rng.uniform_index(c - 1);
  if (b >= a) ++b;
  return OrderTree(a, b, c);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

double penalty_kink_distance(const Vector& v, Index a, Index b) {
  double d = std::abs(v[b] - v[a]);
  double max_leaf = -1e300;
  double second_leaf = -1e300;
  for (Index i = 0; i < v.size(); ++i) {
    if (i == a || i == b) continue;
    if (v[i] > max_leaf) {
      second_leaf = max_leaf;
      max_leaf = v[i];
    } else if (v[i] > second_leaf) {
      second_leaf = v[i];
    }
  }
  if (max_leaf > -1e299) {
    d = std::min(d, std::abs(max_leaf - std::min(v[a], v[b])));
    if (second_leaf > -1e299) d = std::min(d, max_leaf - second_leaf);
  }
  return d;
}

// --- shared setup for the trend criteria ------------------------------------

struct TrendResults {
  // fraction -> mean final accuracy over seeds, percent
  std::map<double, double> fraction_mean;
  double kd_p_mean = 0.0;
  double elapsed_seconds = 0.0;
};

TrendResults run_trend_experiment() {
  const auto start = std::chrono::steady_clock::now();

  SyntheticSpec spec;
  spec.seed = 42;
  spec.n_train = 480;
  spec.n_test = 960;
  spec.dim = 8;
  spec.num_classes = 6;
  spec.overlap = 0.6;
  spec.label_noise = 0.3;
  const SyntheticDataset ds = make_synthetic(spec);

  const DistillConfig cfg;  // tau 4.5, alpha 0.95, beta 3, sigma 2
  const std::vector<double> fractions{0.0, 0.25, 0.5, 0.75, 1.0};
  const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};

  TrainOptions options;
  options.epochs = 40;
  options.learning_rate = 0.05;
  options.batch_size = 32;
  options.hidden_dim = 32;
  options.mixing_alpha = 1.0;

  TrendResults results;
  std::map<double, double> sums;
  double kd_p_sum = 0.0;
  for (std::uint64_t seed : seeds) {
    const TrainResult teacher = train_teacher(ds, 60, 0.1, seed, 32, 32);
    for (double fraction : fractions) {
      TrainOptions run_options = options;
      run_options.calibration_fraction = fraction;
      const TrainResult run = distill(teacher.model, ds, DistillMode::kd_i, cfg,
                                      Augmentation::mixup, seed, run_options);
      sums[fraction] += run.metrics.back().test_accuracy;
    }
    const TrainResult kd_p_run = distill(teacher.model, ds, DistillMode::kd_p,
                                         cfg, Augmentation::mixup, seed, options);
    kd_p_sum += kd_p_run.metrics.back().test_accuracy;
  }
  for (const auto& [fraction, total] : sums) {
    results.fraction_mean[fraction] = total / static_cast<double>(seeds.size());
  }
  results.kd_p_mean = kd_p_sum / static_cast<double>(seeds.size());
  results.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return results;
}

std::string format_fraction_means(const TrendResults& results) {
  std::ostringstream text;
  text.setf(std::ios::fixed);
  text.precision(2);
  for (const auto& [fraction, mean] : results.fraction_mean) {
    text << "f" << fraction << "=" << mean << "% ";
  }
  text << "kd_p=" << results.kd_p_mean << "%";
  return text.str();
}

}  // namespace

int main() {
  // 1. Oracle equivalence.
  run_criterion(1, "adapted_irt equals the exhaustive oracle", [](Criterion& c) {
    RandomSource rng(1001);
    for (int trial = 0; trial < 1000; ++trial) {
      const Index labels = 3 + rng.uniform_index(6);
      const OrderTree tree = random_tree(rng, labels);
      const LabelDistribution soft = random_probs(rng, labels, trial % 2 == 1);
      const Vector got = adapted_irt(soft, tree).calibrated.values();
      const Vector want = brute_force_projection(soft, tree).values();
      const double diff = (got - want).cwiseAbs().maxCoeff();
      c.require(diff <= 1e-9, "disagreement " + std::to_string(diff) +
                                  " at trial " + std::to_string(trial));
      if (diff > 1e-9) return;
    }
    c.require(c.elapsed() < 10.0, "exceeded the 10 s budget");
  });

  // 2. Feasibility and conservation at scale.
  run_criterion(2, "projection feasibility and conservation at c=100",
                [](Criterion& c) {
    RandomSource rng(1002);
    const Index labels = 100;
    const OrderTree tree(0, 1, labels);
    for (int trial = 0; trial < 100000; ++trial) {
      const LabelDistribution soft = random_probs(rng, labels, trial % 5 == 0);
      const IsotonicResult result = adapted_irt(soft, tree);
      const Vector& out = result.calibrated.values();

      bool feasible = out[0] >= out[1] - 1e-12;
      for (Index i = 2; i < labels && feasible; ++i) {
        feasible = out[1] >= out[i] - 1e-12;
      }
      if (!feasible) {
        c.require(false, "violation at trial " + std::to_string(trial));
        return;
      }
      const double sum_drift = std::abs(out.sum() - soft.values().sum());
      if (sum_drift > 1e-9) {
        c.require(false, "sum drift " + std::to_string(sum_drift));
        return;
      }
      // Block values must equal their members' input mean.
      std::map<Index, double> sums;
      std::map<Index, Index> counts;
      for (Index i = 0; i < labels; ++i) {
        sums[result.blocks.block_of[static_cast<std::size_t>(i)]] +=
            soft.values()[i];
        counts[result.blocks.block_of[static_cast<std::size_t>(i)]] += 1;
      }
      for (const auto& [id, value] : result.blocks.block_value) {
        if (std::abs(value - sums.at(id) / static_cast<double>(counts.at(id))) >
            1e-12) {
          c.require(false, "block mean drift at trial " + std::to_string(trial));
          return;
        }
      }
    }
    c.require(c.elapsed() < 30.0, "exceeded the 30 s budget");
  });

  // 3. Penalty-feasibility equivalence.
  run_criterion(3, "zero penalty iff zero violations", [](Criterion& c) {
    RandomSource rng(1003);
    int feasible_count = 0;
    for (int trial = 0; trial < 10000; ++trial) {
      const Index labels = 3 + rng.uniform_index(8);
      const Index a = rng.uniform_index(labels);
      Index b = rng.uniform_index(labels - 1);
      if (b >= a) ++b;
      const MixedHardLabel h(a, b, 0.75, labels);
      LabelDistribution s = random_logits(rng, labels);
      if (trial % 4 == 0) {
        Vector v = s.values();
        std::sort(v.data(), v.data() + v.size());
        Vector arranged(labels);
        Index next = labels - 1;
        arranged[a] = v[next--];
        arranged[b] = v[next--];
        for (Index i = 0; i < labels; ++i) {
          if (i != a && i != b) arranged[i] = v[next--];
        }
        s = LabelDistribution::logits(std::move(arranged));
      }
      const bool zero_penalty = order_penalty(s, h) == 0.0;
      const bool zero_violations =
          count_violations(s, build_order_tree(h)) == 0;
      if (zero_penalty != zero_violations) {
        c.require(false, "mismatch at trial " + std::to_string(trial));
        return;
      }
      if (zero_violations) ++feasible_count;
    }
    c.note(std::to_string(feasible_count) + "/10000 feasible");
    c.require(feasible_count > 1000, "too few feasible cases exercised");
    c.require(feasible_count < 9000, "too few infeasible cases exercised");
  });

  // 4. Gradient correctness.
  run_criterion(4, "gradients match central finite differences",
                [](Criterion& c) {
    const DistillConfig cfg;
    RandomSource rng(1004);
    const double step = 1e-5;

    // Losses with respect to student logits, away from hinge kinks.
    int checked = 0;
    while (checked < 50) {
      const Index labels = 3 + rng.uniform_index(6);
      const LabelDistribution t = random_logits(rng, labels);
      const LabelDistribution s = random_logits(rng, labels);
      const MixedHardLabel h(0, 1, 0.7, labels);
      if (penalty_kink_distance(s.values(), 0, 1) < 1e-3) continue;
      ++checked;

      const LabelDistribution y = expand_hard_label(h);
      const std::vector<std::pair<Vector, std::function<double(const Vector&)>>>
          cases{
              {kd_loss_grad(s, t, y, cfg),
               [&](const Vector& v) {
                 return kd_loss(LabelDistribution::logits(v), t, y, cfg);
               }},
              {kd_aug_loss_grad(s, t, h, cfg),
               [&](const Vector& v) {
                 return kd_aug_loss(LabelDistribution::logits(v), t, h, cfg);
               }},
              {kd_i_loss_grad(s, t, h, cfg),
               [&](const Vector& v) {
                 return kd_i_loss(LabelDistribution::logits(v), t, h, cfg);
               }},
              {kd_p_loss_grad(s, t, h, cfg),
               [&](const Vector& v) {
                 return kd_p_loss(LabelDistribution::logits(v), t, h, cfg);
               }},
          };
      for (const auto& [grad, loss] : cases) {
        for (Index i = 0; i < labels; ++i) {
          Vector hi = s.values();
          Vector lo = s.values();
          hi[i] += step;
          lo[i] -= step;
          const double fd = (loss(hi) - loss(lo)) / (2.0 * step);
          const double scale = std::max({1.0, std::abs(fd), std::abs(grad[i])});
          if (std::abs(fd - grad[i]) / scale > 1e-4) {
            c.require(false, "loss gradient off at coordinate " +
                                 std::to_string(i));
            return;
          }
        }
      }
    }

    // Penalty subgradient on 100 instances at least 1e-3 from any kink.
    int penalty_checked = 0;
    while (penalty_checked < 100) {
      const Index labels = 3 + rng.uniform_index(8);
      const MixedHardLabel h(0, 1, 0.8, labels);
      const LabelDistribution s = random_logits(rng, labels);
      if (penalty_kink_distance(s.values(), 0, 1) < 1e-3) continue;
      ++penalty_checked;
      const Vector grad = order_penalty_gradient(s, h);
      for (Index i = 0; i < labels; ++i) {
        Vector hi = s.values();
        Vector lo = s.values();
        hi[i] += step;
        lo[i] -= step;
        const double fd = (order_penalty(LabelDistribution::logits(hi), h) -
                           order_penalty(LabelDistribution::logits(lo), h)) /
                          (2.0 * step);
        const double scale = std::max({1.0, std::abs(fd), std::abs(grad[i])});
        if (std::abs(fd - grad[i]) / scale > 1e-4) {
          c.require(false, "penalty gradient off");
          return;
        }
      }
    }

    // Full MLP backpropagation on a fixed tiny network.
    RandomSource teacher_rng(901);
    RandomSource student_rng(902);
    RandomSource data_rng(903);
    const Mlp teacher(4, 5, 4, teacher_rng);
    const Mlp student(4, 5, 4, student_rng);
    Matrix inputs(3, 4);
    for (Index i = 0; i < 3; ++i) {
      for (Index j = 0; j < 4; ++j) inputs(i, j) = data_rng.normal();
    }
    const std::vector<MixedHardLabel> hards{{0, 2, 0.7, 4},
                                            {1, 3, 0.6, 4},
                                            {2, 1, 0.85, 4}};
    for (const DistillMode mode : {DistillMode::kd, DistillMode::kd_aug,
                                   DistillMode::kd_i, DistillMode::kd_p}) {
      const auto batch_loss = [&](const Mlp& net) {
        double total = 0.0;
        for (Index i = 0; i < 3; ++i) {
          const Vector x = inputs.row(i).transpose();
          const LabelDistribution tl = teacher.forward(x);
          const LabelDistribution sl = net.forward(x);
          const MixedHardLabel& h = hards[static_cast<std::size_t>(i)];
          switch (mode) {
            case DistillMode::kd:
              total += kd_loss(sl, tl, expand_hard_label(h), cfg);
              break;
            case DistillMode::kd_aug: total += kd_aug_loss(sl, tl, h, cfg); break;
            case DistillMode::kd_i: total += kd_i_loss(sl, tl, h, cfg); break;
            case DistillMode::kd_p: total += kd_p_loss(sl, tl, h, cfg); break;
          }
        }
        return total / 3.0;
      };
      MlpGradients grads = zero_gradients(student);
      for (Index i = 0; i < 3; ++i) {
        const Vector x = inputs.row(i).transpose();
        const LabelDistribution tl = teacher.forward(x);
        const LabelDistribution sl = student.forward(x);
        const MixedHardLabel& h = hards[static_cast<std::size_t>(i)];
        Vector g;
        switch (mode) {
          case DistillMode::kd:
            g = kd_loss_grad(sl, tl, expand_hard_label(h), cfg);
            break;
          case DistillMode::kd_aug: g = kd_aug_loss_grad(sl, tl, h, cfg); break;
          case DistillMode::kd_i: g = kd_i_loss_grad(sl, tl, h, cfg); break;
          case DistillMode::kd_p: g = kd_p_loss_grad(sl, tl, h, cfg); break;
        }
        backprop(student, x, g, grads);
      }
      grads.w1 /= 3.0;
      grads.b1 /= 3.0;
      grads.w2 /= 3.0;
      grads.b2 /= 3.0;

      const auto check_matrix = [&](Matrix Mlp::*field, const Matrix& analytic) {
        for (Index i = 0; i < analytic.rows(); ++i) {
          for (Index j = 0; j < analytic.cols(); ++j) {
            Mlp probe = student;
            (probe.*field)(i, j) += step;
            const double up = batch_loss(probe);
            (probe.*field)(i, j) -= 2.0 * step;
            const double down = batch_loss(probe);
            const double fd = (up - down) / (2.0 * step);
            const double scale =
                std::max({1.0, std::abs(fd), std::abs(analytic(i, j))});
            if (std::abs(fd - analytic(i, j)) / scale > 1e-3) {
              c.require(false, "mlp gradient off in matrix field");
              return false;
            }
          }
        }
        return true;
      };
      const auto check_vector = [&](Vector Mlp::*field, const Vector& analytic) {
        for (Index i = 0; i < analytic.size(); ++i) {
          Mlp probe = student;
          (probe.*field)(i) += step;
          const double up = batch_loss(probe);
          (probe.*field)(i) -= 2.0 * step;
          const double down = batch_loss(probe);
          const double fd = (up - down) / (2.0 * step);
          const double scale =
              std::max({1.0, std::abs(fd), std::abs(analytic(i))});
          if (std::abs(fd - analytic(i)) / scale > 1e-3) {
            c.require(false, "mlp gradient off in vector field");
            return false;
          }
        }
        return true;
      };
      if (!check_matrix(&Mlp::w1, grads.w1)) return;
      if (!check_vector(&Mlp::b1, grads.b1)) return;
      if (!check_matrix(&Mlp::w2, grads.w2)) return;
      if (!check_vector(&Mlp::b2, grads.b2)) return;
    }
  });

  // 5. Exact reductions.
  run_criterion(5, "beta/sigma/gamma reductions are bit-exact", [](Criterion& c) {
    RandomSource rng(1005);
    for (int trial = 0; trial < 200; ++trial) {
      const Index labels = 3 + rng.uniform_index(6);
      const LabelDistribution s = random_logits(rng, labels);
      const LabelDistribution t = random_logits(rng, labels);
      const Index a = rng.uniform_index(labels);
      Index b = rng.uniform_index(labels - 1);
      if (b >= a) ++b;
      const MixedHardLabel h(a, b, 0.5 + 0.5 * rng.uniform(), labels);

      DistillConfig beta_zero;
      beta_zero.beta = 0.0;
      if (kd_i_loss(s, t, h, beta_zero) != kd_aug_loss(s, t, h, beta_zero)) {
        c.require(false, "kd_i(beta=0) != kd_aug");
        return;
      }
      DistillConfig sigma_zero;
      sigma_zero.sigma = 0.0;
      if (kd_p_loss(s, t, h, sigma_zero) != kd_aug_loss(s, t, h, sigma_zero)) {
        c.require(false, "kd_p(sigma=0) != kd_aug");
        return;
      }
      const MixedHardLabel pure(a, b, 1.0, labels);
      Vector one_hot = Vector::Zero(labels);
      one_hot[a] = 1.0;
      if (kd_aug_loss(s, t, pure, DistillConfig{}) !=
          kd_loss(s, t, LabelDistribution::probabilities(one_hot),
                  DistillConfig{})) {
        c.require(false, "kd_aug(gamma=1) != kd(one-hot)");
        return;
      }
    }
  });

  // 6 & 7 share one experiment.
  const TrendResults trend = run_trend_experiment();

  run_criterion(6, "accuracy is non-decreasing in the calibration fraction",
                [&](Criterion& c) {
    c.note(format_fraction_means(trend) + ", " +
           std::to_string(trend.elapsed_seconds) + "s shared");
    c.require(trend.elapsed_seconds < 300.0, "exceeded the 5 min budget");
    std::vector<double> means;
    for (const auto& [fraction, mean] : trend.fraction_mean) {
      means.push_back(mean);
    }
    int inversions = 0;
    double worst_drop = 0.0;
    for (std::size_t i = 1; i < means.size(); ++i) {
      if (means[i] < means[i - 1]) {
        ++inversions;
        worst_drop = std::max(worst_drop, means[i - 1] - means[i]);
      }
    }
    c.require(inversions <= 1, "more than one adjacent inversion (" +
                                   std::to_string(inversions) + ")");
    c.require(worst_drop <= 0.3,
              "inversion of " + std::to_string(worst_drop) + " points");
  });

  run_criterion(7, "kd_i and kd_p do not fall behind kd_aug", [&](Criterion& c) {
    const double kd_aug_mean = trend.fraction_mean.at(0.0);
    const double kd_i_mean = trend.fraction_mean.at(1.0);
    c.note(format_fraction_means(trend));
    c.require(trend.elapsed_seconds < 300.0, "exceeded the 5 min budget");
    c.require(kd_i_mean >= kd_aug_mean - 0.1, "kd_i fell behind kd_aug");
    c.require(trend.kd_p_mean >= kd_aug_mean - 0.1, "kd_p fell behind kd_aug");
    c.require(kd_i_mean > kd_aug_mean || trend.kd_p_mean > kd_aug_mean,
              "neither kd_i nor kd_p strictly exceeds kd_aug");
  });

  // 8. Complexity via the bench subcommand.
  run_criterion(8, "bench confirms c log c and linear scaling", [](Criterion& c) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run({"isokd", "bench", "--c-values", "1000",
                               "--c-values", "10000", "--reps", "9"},
                              out, err);
    std::string flat = out.str();
    for (auto& ch : flat) {
      if (ch == '\n') ch = ';';
    }
    c.note(flat);
    c.require(code == 0, "bench exited with " + std::to_string(code));
  });

  // 9. CutMix geometry.
  run_criterion(9, "cutmix effective gamma distribution at 0.75 on 64x64",
                [](Criterion& c) {
    RandomSource data_rng(1009);
    SampleTensor x(64, 64, 1);
    SampleTensor y(64, 64, 1);
    for (Index i = 0; i < x.data().size(); ++i) {
      x.data()[i] = data_rng.normal();
      y.data()[i] = data_rng.normal();
    }
    RandomSource rng(2009);
    double mean = 0.0;
    int interior = 0;
    for (int draw = 0; draw < 10000; ++draw) {
      const CutMixResult cut = cutmix(x, y, 0.75, rng);
      mean += cut.effective_gamma;
      const bool inside = cut.box.r_x - cut.box.r_w / 2.0 >= 0.0 &&
                          cut.box.r_x + cut.box.r_w / 2.0 <= 64.0 &&
                          cut.box.r_y - cut.box.r_h / 2.0 >= 0.0 &&
                          cut.box.r_y + cut.box.r_h / 2.0 <= 64.0;
      if (inside) {
        ++interior;
        if (std::abs(cut.effective_gamma - 0.75) > 2.0 / 64.0) {
          c.require(false, "interior draw outside the rounding slack");
          return;
        }
      }
      if (cut.effective_gamma < 0.75) {
        c.require(false, "clipping decreased the effective gamma");
        return;
      }
    }
    mean /= 10000.0;
    std::ostringstream note;
    note << "mean " << mean << ", " << interior << " interior draws";
    c.note(note.str());
    c.require(mean >= 0.75 && mean <= 0.85, "mean outside [0.75, 0.85]");
    c.require(interior > 1000, "too few interior draws to be meaningful");
  });

  // 10. CLI golden files.
  run_criterion(10, "calibrate and diagnose match their golden files",
                [](Criterion& c) {
    const fs::path out_path =
        fs::temp_directory_path() / "isokd_acceptance_calibrate.jsonl";
    std::ostringstream out;
    std::ostringstream err;
    int code = cli::run({"isokd", "calibrate",
                         (kFixtures / "calibrate_input.jsonl").string(),
                         "--out", out_path.string()},
                        out, err);
    c.require(code == 0, "calibrate exited with " + std::to_string(code));
    c.require(slurp(out_path) == slurp(kFixtures / "calibrate_golden.jsonl"),
              "calibrate output differs from the oracle golden");

    std::ostringstream diag_out;
    code = cli::run({"isokd", "diagnose",
                     (kFixtures / "diagnose_input.jsonl").string()},
                    diag_out, err);
    c.require(code == 0, "diagnose exited with " + std::to_string(code));
    c.require(diag_out.str() == slurp(kFixtures / "diagnose_golden.txt"),
              "diagnose output differs from the hand-enumerated golden");
  });

  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", g_failures);
  return 1;
}
