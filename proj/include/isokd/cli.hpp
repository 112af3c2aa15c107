#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "isokd/types.hpp"

namespace isokd::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

struct CalibrateOptions {
  std::string input;
  std::string output;
  std::string space = "probs";  // probs | logits
  // When set, logit inputs are tempered through softmax(logits / tau) and
  // calibrated as probabilities; without it raw logits are projected as-is.
  std::optional<double> tau;
  std::string mode = "irt";  // irt | penalty-check
};

struct DiagnoseOptions {
  std::string input;
  std::string report = "text";  // text | json
};

struct ExperimentOptions {
  std::string config_path;
  std::string out_override;  // replaces the config's out_dir when nonempty
};

struct BenchOptions {
  std::vector<Index> c_values = {100, 1000, 10000};
  int reps = 5;
  std::uint64_t seed = 1;
};

int run_calibrate(const CalibrateOptions& options, std::ostream& err);
int run_diagnose(const DiagnoseOptions& options, std::ostream& out,
                 std::ostream& err);
int run_experiment(const ExperimentOptions& options, std::ostream& out,
                   std::ostream& err);
int run_bench(const BenchOptions& options, std::ostream& out, std::ostream& err);

/// Full argv entry point used by the binary and the end-to-end tests.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace isokd::cli
