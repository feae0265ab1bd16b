#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "rrp/config.hpp"
#include "rrp/corpus.hpp"
#include "rrp/eval.hpp"
#include "rrp/featsel.hpp"
#include "rrp/persist.hpp"

namespace rrp {

struct PartitionResult {
  ConfusionMatrix confusion;
  Metrics metrics;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<MovieSummary> corpus_summary;
  std::size_t labeled = 0;
  std::size_t train_high = 0, train_low = 0, test_high = 0, test_low = 0;
  std::uint32_t split_digest = 0;

  std::size_t vocabulary_size = 0;
  RankedFeatures features;
  std::uint32_t feature_digest = 0;

  PartitionResult train;
  PartitionResult test;

  /// Optimizer diagnostics (SVM only).
  std::optional<std::size_t> svm_iterations;
  std::optional<bool> svm_converged;
  std::optional<double> svm_final_violation;

  /// Milliseconds per stage, in execution order.
  std::vector<std::pair<std::string, double>> timings_ms;
};

struct ExperimentResult {
  ExperimentReport report;
  Classifier classifier;
};

/// load -> label -> split -> tokenize -> vocabulary and ranking (training
/// partition unless paper_faithful) -> vectorize -> train -> evaluate.
/// Errors are rethrown with the failing stage's name prefixed.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Text report; the trailing [timings] section is omitted when
/// include_timings is false, which makes the output reproducible byte for byte.
std::string render_text(const ExperimentReport& report, bool include_timings = true);
nlohmann::json to_json(const ExperimentReport& report, bool include_timings = true);

/// CRC-32 of the ordered feature terms.
std::uint32_t feature_digest(const RankedFeatures& features);

struct SweepRun {
  ExperimentConfig config;
  std::optional<ExperimentReport> report;
  std::string error;
};

struct SweepResult {
  std::vector<SweepRun> runs;
  ReportTable table;  // held-out (test) metrics
};

/// Runs every config; a failing run fills its cell with the error and the
/// sweep continues. Rows group by feature-set label, columns by classifier,
/// both in first-appearance order.
SweepResult sweep(std::span<const ExperimentConfig> configs);

}  // namespace rrp
