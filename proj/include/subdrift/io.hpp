#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "subdrift/bench.hpp"

namespace subdrift {

// All writers emit locale-independent, deterministic text: doubles go
// through std::to_chars (shortest round-trip form, "nan" for NaN).
std::string format_double(double v);
double parse_double(const std::string& text);

void write_runs_csv(const std::filesystem::path& path, const ExperimentConfig& cfg,
                    const std::vector<RunResult>& results);

struct RunsCsvRow {
  int run_id;
  double target_size;
  bool positive;
  int concept_orig;
  int concept_drift;
  double computed_size;
  std::string detector;
  long detection_count;
};

std::vector<RunsCsvRow> read_runs_csv(const std::filesystem::path& path);

void write_metrics_csv(const std::filesystem::path& path,
                       const std::vector<MetricsRow>& rows);

void write_trace_csv(const std::filesystem::path& path, const RunResult& result);

void write_manifest(const std::filesystem::path& path, const ExperimentConfig& cfg,
                    const std::vector<RunResult>& results);

// Rebuilds just enough config from a manifest to recompute metrics from
// runs.csv (sizes, runs_per_size, calibration fraction, detectors).
ExperimentConfig read_manifest_config(const std::filesystem::path& path);

}  // namespace subdrift
