#include "subdrift/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace subdrift {

namespace {

constexpr std::uint64_t kRunDomain = 1;

}  // namespace

std::vector<double> default_size_grid() {
  // Ten log-spaced targets from 1% to 100%.
  std::vector<double> sizes;
  for (int i = 0; i < 10; ++i) {
    sizes.push_back(std::pow(10.0, -2.0 + 2.0 * static_cast<double>(i) / 9.0));
  }
  sizes.back() = 1.0;
  return sizes;
}

ExperimentConfig::ExperimentConfig()
    : subgroup_sizes(default_size_grid()), detectors(default_detector_suite()) {}

void ExperimentConfig::validate() const {
  if (subgroup_sizes.empty()) throw std::invalid_argument("config: no subgroup sizes");
  for (double s : subgroup_sizes) {
    if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("config: sizes must be in (0, 1]");
  }
  if (runs_per_size < 2 || runs_per_size % 2 != 0) {
    throw std::invalid_argument("config: runs_per_size must be even and >= 2");
  }
  if (train_size < 1) throw std::invalid_argument("config: train_size must be >= 1");
  if (batch_count < 1 || batch_size < 1) {
    throw std::invalid_argument("config: batch_count and batch_size must be >= 1");
  }
  if (!(drift_width > 0.0)) throw std::invalid_argument("config: drift_width must be > 0");
  if (!(perturbation >= 0.0 && perturbation <= 1.0)) {
    throw std::invalid_argument("config: perturbation must be in [0, 1]");
  }
  if (!(subgroup_tolerance >= 0.0)) throw std::invalid_argument("config: tolerance must be >= 0");
  if (subgroup_max_iter < 1) throw std::invalid_argument("config: subgroup_max_iter must be >= 1");
  if (!(calibration_fraction > 0.0 && calibration_fraction < 1.0)) {
    throw std::invalid_argument("config: calibration_fraction must be in (0, 1)");
  }
  long stratum = runs_per_size / 2;
  long cal = std::lround(static_cast<double>(stratum) * calibration_fraction);
  if (cal < 1 || cal >= stratum) {
    throw std::invalid_argument(
        "config: calibration split leaves an empty calibration or evaluation stratum");
  }
  if (threads < 0) throw std::invalid_argument("config: threads must be >= 0");
  if (detectors.empty()) throw std::invalid_argument("config: no detectors");
  for (const auto& d : detectors) {
    std::visit([](const auto& c) { c.validate(); }, d);
  }
}

int ExperimentConfig::total_runs() const {
  return static_cast<int>(subgroup_sizes.size()) * runs_per_size;
}

RunSpec run_spec(const ExperimentConfig& cfg, int run_id) {
  if (run_id < 0 || run_id >= cfg.total_runs()) {
    throw std::invalid_argument("run_id out of range");
  }
  RunSpec spec;
  spec.run_id = run_id;
  int size_idx = run_id / cfg.runs_per_size;
  int within = run_id % cfg.runs_per_size;
  spec.target_size = cfg.subgroup_sizes[static_cast<std::size_t>(size_idx)];
  spec.positive = within < cfg.runs_per_size / 2;
  return spec;
}

RunResult run_experiment(const ExperimentConfig& cfg, const RunSpec& spec) {
  cfg.validate();
  Rng rng = Rng::derive(cfg.seed, kRunDomain, static_cast<std::uint64_t>(spec.run_id));

  RunResult res;
  res.run_id = spec.run_id;
  res.target_size = spec.target_size;
  res.positive = spec.positive;

  ConceptId orig(static_cast<int>(rng.uniform_int(0, kConceptCount - 1)));
  res.concept_orig = orig.index();
  ConceptId drift = orig;
  if (spec.positive) {
    int j = static_cast<int>(rng.uniform_int(0, kConceptCount - 2));
    if (j >= orig.index()) ++j;
    drift = ConceptId(j);
    res.concept_drift = j;
  }

  SubgroupGenResult gen = generate_subgroup(spec.target_size, cfg.subgroup_tolerance,
                                            cfg.subgroup_max_iter, rng);
  res.subgroup = gen.subgroup;
  res.computed_size = gen.computed_size;
  res.residual_gap = gen.residual_gap;
  res.subgroup_converged = gen.converged;

  Dataset train;
  train.records.reserve(static_cast<std::size_t>(cfg.train_size));
  train.labels.reserve(static_cast<std::size_t>(cfg.train_size));
  for (int i = 0; i < cfg.train_size; ++i) {
    Record raw = sample_record(rng, cfg.commission_rule);
    train.labels.push_back(classify(raw, orig));
    train.records.push_back(perturb(raw, cfg.perturbation, rng));
  }
  DecisionTree tree = DecisionTree::fit(train);
  res.training_accuracy = tree.training_accuracy();

  DriftSchedule sched{orig, drift, cfg.drift_center, cfg.drift_width, gen.subgroup,
                      spec.positive};
  DriftStream stream(sched, cfg.batch_count, cfg.batch_size, cfg.perturbation,
                     cfg.commission_rule, rng);

  std::vector<std::unique_ptr<Detector>> detectors;
  detectors.reserve(cfg.detectors.size());
  for (const auto& d : cfg.detectors) detectors.push_back(make_detector(d));
  res.detection_counts.assign(cfg.detectors.size(), 0);

  res.batch_accuracy.reserve(static_cast<std::size_t>(cfg.batch_count));
  res.batch_subgroup_accuracy.reserve(static_cast<std::size_t>(cfg.batch_count));
  long batch_n = 0, batch_correct = 0, batch_sub_n = 0, batch_sub_correct = 0;
  int current_batch = 0;
  auto flush_batch = [&]() {
    res.batch_accuracy.push_back(static_cast<double>(batch_correct) /
                                 static_cast<double>(batch_n));
    res.batch_subgroup_accuracy.push_back(
        batch_sub_n == 0 ? std::numeric_limits<double>::quiet_NaN()
                         : static_cast<double>(batch_sub_correct) /
                               static_cast<double>(batch_sub_n));
    batch_n = batch_correct = batch_sub_n = batch_sub_correct = 0;
  };
  while (auto sample = stream.next()) {
    if (sample->batch != current_batch) {
      flush_batch();
      current_batch = sample->batch;
    }
    int pred = tree.predict(sample->record);
    int err = pred != sample->label;
    ++batch_n;
    batch_correct += 1 - err;
    if (sample->in_subgroup) {
      ++batch_sub_n;
      batch_sub_correct += 1 - err;
    }
    for (std::size_t d = 0; d < detectors.size(); ++d) {
      if (detectors[d]->update(err) == DetectorStatus::drift) {
        ++res.detection_counts[d];
      }
    }
  }
  if (batch_n > 0) flush_batch();
  return res;
}

std::vector<RunResult> run_all(const ExperimentConfig& cfg) {
  cfg.validate();
  int total = cfg.total_runs();
  std::vector<RunResult> results(static_cast<std::size_t>(total));
  unsigned pool = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                  : std::max(1u, std::thread::hardware_concurrency());
  pool = std::min<unsigned>(pool, static_cast<unsigned>(total));
  std::atomic<int> next{0};
  std::vector<std::thread> workers;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned w = 0; w < pool; ++w) {
    workers.emplace_back([&]() {
      while (true) {
        int id = next.fetch_add(1);
        if (id >= total) return;
        try {
          results[static_cast<std::size_t>(id)] = run_experiment(cfg, run_spec(cfg, id));
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

bool in_calibration_split(const ExperimentConfig& cfg, int run_id) {
  int within = run_id % cfg.runs_per_size;
  int stratum = cfg.runs_per_size / 2;
  int pos_in_stratum = within % stratum;  // same rule for both polarities
  long cal = std::lround(static_cast<double>(stratum) * cfg.calibration_fraction);
  return pos_in_stratum < cal;
}

long youden_threshold(const std::vector<std::pair<long, bool>>& calibration_runs) {
  long n_pos = 0, n_neg = 0, max_count = 0;
  for (const auto& [count, positive] : calibration_runs) {
    if (count < 0) throw std::invalid_argument("negative detection count");
    (positive ? n_pos : n_neg) += 1;
    max_count = std::max(max_count, count);
  }
  if (n_pos == 0 || n_neg == 0) {
    throw std::invalid_argument("calibration split needs both positive and negative runs");
  }
  long best_theta = 1;
  double best_j = -std::numeric_limits<double>::infinity();
  for (long theta = 1; theta <= max_count + 1; ++theta) {
    long tp = 0, fp = 0;
    for (const auto& [count, positive] : calibration_runs) {
      if (count >= theta) (positive ? tp : fp) += 1;
    }
    double j = static_cast<double>(tp) / static_cast<double>(n_pos) -
               static_cast<double>(fp) / static_cast<double>(n_neg);
    if (j > best_j) {
      best_j = j;
      best_theta = theta;
    }
  }
  return best_theta;
}

std::vector<long> calibrate_thresholds(const ExperimentConfig& cfg,
                                       const std::vector<RunResult>& results) {
  std::vector<long> thresholds;
  for (std::size_t d = 0; d < cfg.detectors.size(); ++d) {
    std::vector<std::pair<long, bool>> runs;
    for (const auto& r : results) {
      if (!in_calibration_split(cfg, r.run_id)) continue;
      runs.emplace_back(r.detection_counts.at(d), r.positive);
    }
    thresholds.push_back(youden_threshold(runs));
  }
  return thresholds;
}

ConfusionCounts confusion(const std::vector<std::pair<long, bool>>& runs, long threshold) {
  ConfusionCounts c;
  for (const auto& [count, positive] : runs) {
    bool predicted = count >= threshold;
    if (positive) {
      (predicted ? c.tp : c.fn) += 1;
    } else {
      (predicted ? c.fp : c.tn) += 1;
    }
  }
  return c;
}

double accuracy_of(const ConfusionCounts& c) {
  long total = c.tp + c.fp + c.tn + c.fn;
  return total == 0 ? 0.0 : static_cast<double>(c.tp + c.tn) / static_cast<double>(total);
}

double f1_of(const ConfusionCounts& c) {
  long denom = 2 * c.tp + c.fp + c.fn;
  return denom == 0 ? 0.0 : 2.0 * static_cast<double>(c.tp) / static_cast<double>(denom);
}

double fpr_of(const ConfusionCounts& c) {
  long neg = c.fp + c.tn;
  return neg == 0 ? 0.0 : static_cast<double>(c.fp) / static_cast<double>(neg);
}

double fnr_of(const ConfusionCounts& c) {
  long pos = c.tp + c.fn;
  return pos == 0 ? 0.0 : static_cast<double>(c.fn) / static_cast<double>(pos);
}

std::vector<MetricsRow> evaluate(const ExperimentConfig& cfg,
                                 const std::vector<RunResult>& results,
                                 const std::vector<long>& thresholds) {
  if (thresholds.size() != cfg.detectors.size()) {
    throw std::invalid_argument("one threshold per detector required");
  }
  std::vector<MetricsRow> rows;
  for (std::size_t d = 0; d < cfg.detectors.size(); ++d) {
    for (double size : cfg.subgroup_sizes) {
      std::vector<std::pair<long, bool>> runs;
      for (const auto& r : results) {
        if (in_calibration_split(cfg, r.run_id)) continue;
        if (r.target_size != size) continue;
        runs.emplace_back(r.detection_counts.at(d), r.positive);
      }
      ConfusionCounts c = confusion(runs, thresholds[d]);
      MetricsRow row;
      row.detector = detector_name(cfg.detectors[d]);
      row.target_size = size;
      row.accuracy = accuracy_of(c);
      row.f1 = f1_of(c);
      row.fpr = fpr_of(c);
      row.fnr = fnr_of(c);
      row.threshold = thresholds[d];
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace subdrift
