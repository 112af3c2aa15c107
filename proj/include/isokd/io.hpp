#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "isokd/types.hpp"

namespace isokd {

/// One soft-label file row. Fields are kept exactly as parsed; conversion to
/// MixedHardLabel applies the gamma normalization.
struct LabelRecord {
  std::string id;
  double gamma = 1.0;
  Index label_a = 0;
  Index label_b = 1;
  Vector soft;
  std::size_t line = 0;  // 1-based source line, 0 when synthesized

  MixedHardLabel hard_label() const;
};

/// Data-level failure (malformed row, inconsistent dimensions). `line` is
/// 1-based; 0 means the whole file.
class DataError : public std::runtime_error {
 public:
  DataError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Fixed 17-significant-digit formatting used by every file format; doubles
/// survive a round trip exactly and re-serialization is byte-stable.
std::string format_double(double value);

std::string serialize_record(const LabelRecord& record);
LabelRecord parse_record(const std::string& line, std::size_t line_no);

/// Reads a whole record file; enforces a consistent label count across rows.
std::vector<LabelRecord> read_records(std::istream& in);
std::vector<LabelRecord> read_records_file(const std::string& path);

void write_records_file(const std::string& path,
                        const std::vector<LabelRecord>& records);

/// Flat key = value configuration for the experiment runner.
struct ExperimentConfig {
  // dataset
  std::uint64_t data_seed = 42;
  Index n_train = 480;
  Index n_test = 960;
  Index dim = 8;
  Index num_classes = 6;
  double overlap = 0.6;
  double label_noise = 0.3;
  // training
  std::string mode = "kd_i";
  std::string augmentation = "mixup";
  int epochs = 40;
  int teacher_epochs = 60;
  double learning_rate = 0.05;
  double teacher_learning_rate = 0.1;
  Index batch_size = 32;
  Index hidden_dim = 32;
  double mixing_alpha = 1.0;
  // loss
  double tau = 4.5;
  double alpha = 0.95;
  double beta = 3.0;
  double sigma = 2.0;
  // sweep
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  std::vector<double> fractions = {1.0};
  std::string out_dir = "experiment_out";
};

ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig parse_experiment_config_file(const std::string& path);

}  // namespace isokd
