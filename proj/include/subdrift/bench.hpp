#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subdrift/detectors.hpp"
#include "subdrift/drift.hpp"
#include "subdrift/subgroup.hpp"
#include "subdrift/tree.hpp"

namespace subdrift {

std::vector<double> default_size_grid();

struct ExperimentConfig {
  std::vector<double> subgroup_sizes;  // defaults to default_size_grid()
  int runs_per_size = 20;              // even: half positive, half negative
  int train_size = 10000;
  int batch_count = 200;
  int batch_size = 1000;
  double drift_center = 100.0;
  double drift_width = 100.0;
  double perturbation = 0.25;
  double subgroup_tolerance = 0.01;
  int subgroup_max_iter = 1000;
  double calibration_fraction = 0.30;
  std::uint64_t seed = 1;
  CommissionRule commission_rule = CommissionRule::zero_below_75k;
  int threads = 0;  // 0 = hardware concurrency
  bool write_traces = true;
  std::vector<DetectorConfig> detectors;  // defaults to default_detector_suite()

  ExperimentConfig();
  void validate() const;
  int total_runs() const;
};

struct RunSpec {
  int run_id = 0;
  double target_size = 1.0;
  bool positive = true;
};

// Deterministic run layout: runs are grouped by size, positives first.
RunSpec run_spec(const ExperimentConfig& cfg, int run_id);

struct RunResult {
  int run_id = 0;
  double target_size = 1.0;
  bool positive = true;
  int concept_orig = 0;
  int concept_drift = -1;  // -1 on negative runs
  Subgroup subgroup;
  double computed_size = 1.0;
  double residual_gap = 0.0;
  bool subgroup_converged = false;
  double training_accuracy = 0.0;
  std::vector<long> detection_counts;            // one per detector
  std::vector<double> batch_accuracy;            // overall, per batch
  std::vector<double> batch_subgroup_accuracy;   // NaN when a batch has no members
};

RunResult run_experiment(const ExperimentConfig& cfg, const RunSpec& spec);

// All runs, executed on a worker pool; results ordered by run_id and
// independent of the thread count.
std::vector<RunResult> run_all(const ExperimentConfig& cfg);

// Whether a run lands in the calibration split: within each (size, polarity)
// stratum the first round(stratum_size * fraction) runs calibrate, the rest
// evaluate.
bool in_calibration_split(const ExperimentConfig& cfg, int run_id);

// Smallest threshold maximizing Youden's J = TPR - FPR over counts >= theta,
// swept over theta in [1, max_count + 1]. Thresholds candidate runs with
// (detection_count, is_positive) pairs; throws if either polarity is absent.
long youden_threshold(const std::vector<std::pair<long, bool>>& calibration_runs);

// Per-detector thresholds from the calibration split.
std::vector<long> calibrate_thresholds(const ExperimentConfig& cfg,
                                       const std::vector<RunResult>& results);

struct MetricsRow {
  std::string detector;
  double target_size = 0.0;
  double accuracy = 0.0;
  double f1 = 0.0;
  double fpr = 0.0;
  double fnr = 0.0;
  long threshold = 0;
};

struct ConfusionCounts {
  long tp = 0, fp = 0, tn = 0, fn = 0;
};

// Metrics over the evaluation split, one row per (detector, size), ordered by
// detector then size.
std::vector<MetricsRow> evaluate(const ExperimentConfig& cfg,
                                 const std::vector<RunResult>& results,
                                 const std::vector<long>& thresholds);

ConfusionCounts confusion(const std::vector<std::pair<long, bool>>& runs, long threshold);
double accuracy_of(const ConfusionCounts& c);
double f1_of(const ConfusionCounts& c);
double fpr_of(const ConfusionCounts& c);
double fnr_of(const ConfusionCounts& c);

}  // namespace subdrift
