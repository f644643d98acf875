#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pvlab/kernels.hpp"

namespace pvlab {

/// Experiment configuration, read from "key = value" lines. Lists are
/// comma-separated; '#' starts a comment. Unknown keys are rejected.
struct ExperimentConfig {
  std::string experiment;
  std::uint64_t n_max = 0;               // 0: max of the ladder
  std::vector<std::int64_t> ladder;      // empty: per-experiment default
  KernelFamily family = KernelFamily::avg;
  double D = 2.0;
  double alpha = 4.0;
  double epsilon = 0.5;
  std::vector<double> r_list = {2.1, 2.5, 3.0, 4.0};
  std::int64_t Q = 4096;
  int t_max = 6;
  std::uint64_t seed = 1;
  std::string output;                    // CSV path; empty: stdout
  std::string svg;                       // optional chart path
  std::int64_t M = 0;                    // lower window edge (major-arc)
  std::int64_t q_max = 6;                // arc / progression moduli
  std::string xi = "0.6180339887";       // minor-arc point
  std::int64_t x = 0;                    // evaluation site (blowup, transfer)
  double beta = 1.0;                     // normalization exponent
  std::int64_t trials = 1000;            // split
  std::int64_t length = 64;              // split
  std::vector<double> u_list = {0.5, 1.0, 2.0};  // lemma21
};

const std::vector<std::string>& experiment_ids();

// ConfigError with a field-level message.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);  // IoError if unreadable
// Fills defaults and checks every parameter against module preconditions.
ExperimentConfig resolve(ExperimentConfig cfg);

struct ResultRow {
  std::string experiment;
  std::string params;  // "key=value;key=value", first key is the sweep variable
  std::string metric;
  double value = 0.0;
  std::string regime;  // paper | exploratory
  bool sampled_sup = false;
  int truncation = -1;  // effective t_max where one applies
};

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg);

void write_results_csv(std::ostream& os, const std::vector<ResultRow>& rows);

// Line chart from a results CSV (log-log when every plotted value is positive).
std::string render_svg(std::string_view results_csv);

}  // namespace pvlab
