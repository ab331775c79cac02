#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "subdrift/bench.hpp"
#include "subdrift/config.hpp"
#include "subdrift/io.hpp"

namespace fs = std::filesystem;
using namespace subdrift;

namespace {

constexpr std::uint64_t kGenDomain = 2;

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "results";
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

ExperimentConfig load_config(const CommonOpts& opts) {
  ExperimentConfig cfg;
  if (!opts.config_path.empty()) cfg = parse_config_file(opts.config_path);
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.threads) cfg.threads = *opts.threads;
  cfg.validate();
  return cfg;
}

int cmd_gen_subgroups(double target, int n, double tolerance, int max_iter,
                      std::uint64_t seed, const std::string& out_dir) {
  fs::create_directories(out_dir);
  fs::path out_path = fs::path(out_dir) / "subgroups.csv";
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + out_path.string());
  out << "subgroup_id,target,computed_size,residual_gap,converged,iterations,"
         "n_slices,description\n";
  int converged = 0;
  for (int i = 0; i < n; ++i) {
    Rng rng = Rng::derive(seed, kGenDomain, static_cast<std::uint64_t>(i));
    SubgroupGenResult res = generate_subgroup(target, tolerance, max_iter, rng);
    converged += res.converged;
    out << i << ',' << format_double(target) << ',' << format_double(res.computed_size)
        << ',' << format_double(res.residual_gap) << ',' << (res.converged ? 1 : 0) << ','
        << res.iterations << ',' << res.subgroup.slices().size() << ",\""
        << res.subgroup.description() << "\"\n";
  }
  std::cout << "wrote " << out_path.string() << "\n";
  std::cout << "converged " << converged << "/" << n << " ("
            << format_double(static_cast<double>(converged) / n) << ") at tolerance "
            << format_double(tolerance) << "\n";
  return 0;
}

int cmd_run(const CommonOpts& opts) {
  ExperimentConfig cfg = load_config(opts);
  fs::create_directories(opts.out_dir);
  std::vector<RunResult> results = run_all(cfg);
  std::vector<long> thresholds = calibrate_thresholds(cfg, results);
  std::vector<MetricsRow> metrics = evaluate(cfg, results, thresholds);

  fs::path out(opts.out_dir);
  write_runs_csv(out / "runs.csv", cfg, results);
  write_metrics_csv(out / "metrics.csv", metrics);
  write_manifest(out / "manifest.json", cfg, results);
  if (cfg.write_traces) {
    for (const auto& r : results) {
      write_trace_csv(out / ("trace_" + std::to_string(r.run_id) + ".csv"), r);
    }
  }
  std::cout << "wrote " << results.size() << " runs to " << out.string() << "\n";
  for (const auto& m : metrics) {
    std::cout << m.detector << " size=" << format_double(m.target_size)
              << " acc=" << format_double(m.accuracy) << " f1=" << format_double(m.f1)
              << " fpr=" << format_double(m.fpr) << " fnr=" << format_double(m.fnr)
              << " theta=" << m.threshold << "\n";
  }
  return 0;
}

int cmd_report(const std::string& dir) {
  fs::path out(dir);
  ExperimentConfig cfg = read_manifest_config(out / "manifest.json");
  std::vector<RunsCsvRow> rows = read_runs_csv(out / "runs.csv");
  if (rows.empty()) throw std::runtime_error("runs.csv has no data rows");

  // Rebuild per-run detection counts in detector order.
  std::map<std::string, std::size_t> det_index;
  for (std::size_t d = 0; d < cfg.detectors.size(); ++d) {
    det_index[detector_name(cfg.detectors[d])] = d;
  }
  std::map<int, RunResult> by_id;
  for (const auto& row : rows) {
    auto it = det_index.find(row.detector);
    if (it == det_index.end()) {
      throw std::runtime_error("runs.csv names detector '" + row.detector +
                               "' absent from the manifest");
    }
    RunResult& r = by_id[row.run_id];
    r.run_id = row.run_id;
    r.target_size = row.target_size;
    r.positive = row.positive;
    r.concept_orig = row.concept_orig;
    r.concept_drift = row.concept_drift;
    r.computed_size = row.computed_size;
    if (r.detection_counts.empty()) r.detection_counts.assign(cfg.detectors.size(), 0);
    r.detection_counts[it->second] = row.detection_count;
  }
  std::vector<RunResult> results;
  results.reserve(by_id.size());
  for (auto& [id, r] : by_id) results.push_back(std::move(r));

  std::vector<long> thresholds = calibrate_thresholds(cfg, results);
  std::vector<MetricsRow> metrics = evaluate(cfg, results, thresholds);
  write_metrics_csv(out / "metrics.csv", metrics);
  std::cout << "wrote " << (out / "metrics.csv").string() << " from " << results.size()
            << " runs\n";
  return 0;
}

int cmd_trace(const CommonOpts& opts, double size, int run_index) {
  ExperimentConfig cfg = load_config(opts);
  cfg.subgroup_sizes = {size};
  cfg.validate();
  fs::create_directories(opts.out_dir);

  // A positive run addressed by (seed, index); index 0 matches the first
  // bench run at this size.
  RunSpec spec;
  spec.run_id = run_index;
  spec.target_size = size;
  spec.positive = true;
  RunResult res = run_experiment(cfg, spec);

  fs::path out_path = fs::path(opts.out_dir) / ("trace_" + std::to_string(run_index) + ".csv");
  write_trace_csv(out_path, res);

  int nb = static_cast<int>(res.batch_accuracy.size());
  int window = std::max(1, nb / 10);
  auto window_mean = [&](const std::vector<double>& v, int lo, int hi) {
    double sum = 0;
    int n = 0;
    for (int b = lo; b < hi; ++b) {
      if (std::isnan(v[static_cast<std::size_t>(b)])) continue;
      sum += v[static_cast<std::size_t>(b)];
      ++n;
    }
    return n == 0 ? std::numeric_limits<double>::quiet_NaN() : sum / n;
  };
  std::cout << "wrote " << out_path.string() << "\n";
  std::cout << "concepts " << res.concept_orig << "->" << res.concept_drift
            << " computed_size=" << format_double(res.computed_size) << "\n";
  std::cout << "overall pre=" << format_double(window_mean(res.batch_accuracy, 0, window))
            << " post=" << format_double(window_mean(res.batch_accuracy, nb - window, nb))
            << "\n";
  std::cout << "subgroup pre="
            << format_double(window_mean(res.batch_subgroup_accuracy, 0, window))
            << " post="
            << format_double(window_mean(res.batch_subgroup_accuracy, nb - window, nb))
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Localized concept drift benchmark on the Agrawal stream"};
  app.require_subcommand(1);

  CommonOpts common;

  auto* gen = app.add_subcommand("gen-subgroups",
                                 "Generate subgroups for one target size and "
                                 "report the residual-gap distribution");
  double target = 0.05;
  int n = 200;
  double tolerance = 0.01;
  int max_iter = 1000;
  std::uint64_t gen_seed = 1;
  std::string gen_out = "results";
  gen->add_option("--target", target, "Target subgroup size in (0, 1]")->required();
  gen->add_option("--n", n, "Number of subgroups to generate");
  gen->add_option("--tolerance", tolerance, "Convergence tolerance on computed size");
  gen->add_option("--max-iter", max_iter, "Proposal budget per subgroup");
  gen->add_option("--seed", gen_seed, "Master seed");
  gen->add_option("--out", gen_out, "Output directory");

  auto* run = app.add_subcommand("run", "Run the full benchmark and write CSV outputs");
  run->add_option("--config", common.config_path, "Config file (key = value lines)");
  run->add_option("--out", common.out_dir, "Output directory");
  std::uint64_t seed_opt = 0;
  auto* seed_flag = run->add_option("--seed", seed_opt, "Master seed (overrides config)");
  int threads_opt = 0;
  auto* threads_flag =
      run->add_option("--threads", threads_opt, "Worker threads (0 = hardware)");

  auto* report = app.add_subcommand("report", "Recompute metrics.csv from runs.csv");
  std::string report_dir = "results";
  report->add_option("--out", report_dir, "Directory holding runs.csv and manifest.json");

  auto* trace = app.add_subcommand("trace",
                                   "Trace one positive run's per-batch accuracy");
  double trace_size = 0.02;
  int trace_index = 0;
  trace->add_option("--config", common.config_path, "Config file");
  trace->add_option("--size", trace_size, "Target subgroup size");
  trace->add_option("--index", trace_index, "Trace index (names the output file)");
  trace->add_option("--out", common.out_dir, "Output directory");
  auto* trace_seed_flag = trace->add_option("--seed", seed_opt, "Master seed");
  auto* trace_threads_flag = trace->add_option("--threads", threads_opt, "Worker threads");

  try {
    app.parse(argc, argv);
    if (seed_flag->count() || trace_seed_flag->count()) common.seed = seed_opt;
    if (threads_flag->count() || trace_threads_flag->count()) common.threads = threads_opt;
    if (gen->parsed()) {
      return cmd_gen_subgroups(target, n, tolerance, max_iter, gen_seed, gen_out);
    }
    if (run->parsed()) return cmd_run(common);
    if (report->parsed()) return cmd_report(report_dir);
    if (trace->parsed()) return cmd_trace(common, trace_size, trace_index);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
