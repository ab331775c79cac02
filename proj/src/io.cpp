#include "subdrift/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace subdrift {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

nlohmann::ordered_json detector_json(const DetectorConfig& cfg) {
  nlohmann::ordered_json j;
  j["name"] = detector_name(cfg);
  if (const auto* d = std::get_if<DdmConfig>(&cfg)) {
    j["warning_multiplier"] = d->warning_multiplier;
    j["drift_multiplier"] = d->drift_multiplier;
    j["min_samples"] = d->min_samples;
  } else if (const auto* e = std::get_if<EddmConfig>(&cfg)) {
    j["warning_ratio"] = e->warning_ratio;
    j["drift_ratio"] = e->drift_ratio;
    j["min_errors"] = e->min_errors;
  } else if (const auto* h = std::get_if<HddmConfig>(&cfg)) {
    j["warning_delta"] = h->warning_delta;
    j["drift_delta"] = h->drift_delta;
  } else if (const auto* f = std::get_if<FhddmConfig>(&cfg)) {
    j["window"] = f->window;
    j["delta"] = f->delta;
  }
  return j;
}

DetectorConfig detector_from_json(const nlohmann::ordered_json& j) {
  std::string name = j.at("name").get<std::string>();
  if (name == "ddm") {
    DdmConfig d;
    d.warning_multiplier = j.at("warning_multiplier").get<double>();
    d.drift_multiplier = j.at("drift_multiplier").get<double>();
    d.min_samples = j.at("min_samples").get<int>();
    return d;
  }
  if (name == "eddm") {
    EddmConfig e;
    e.warning_ratio = j.at("warning_ratio").get<double>();
    e.drift_ratio = j.at("drift_ratio").get<double>();
    e.min_errors = j.at("min_errors").get<int>();
    return e;
  }
  if (name == "hddm_a") {
    HddmConfig h;
    h.warning_delta = j.at("warning_delta").get<double>();
    h.drift_delta = j.at("drift_delta").get<double>();
    return h;
  }
  if (name == "fhddm") {
    FhddmConfig f;
    f.window = j.at("window").get<int>();
    f.delta = j.at("delta").get<double>();
    return f;
  }
  throw std::runtime_error("manifest: unknown detector name " + name);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("to_chars failed");
  return std::string(buf, ptr);
}

double parse_double(const std::string& text) {
  if (text == "nan" || text == "-nan") return std::numeric_limits<double>::quiet_NaN();
  double v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::runtime_error("bad float field: " + text);
  }
  return v;
}

void write_runs_csv(const std::filesystem::path& path, const ExperimentConfig& cfg,
                    const std::vector<RunResult>& results) {
  auto out = open_out(path);
  out << "run_id,target_size,positive,concept_orig,concept_drift,computed_size,"
         "detector,detection_count\n";
  for (const auto& r : results) {
    for (std::size_t d = 0; d < cfg.detectors.size(); ++d) {
      out << r.run_id << ',' << format_double(r.target_size) << ',' << (r.positive ? 1 : 0)
          << ',' << r.concept_orig << ',' << r.concept_drift << ','
          << format_double(r.computed_size) << ',' << detector_name(cfg.detectors[d]) << ','
          << r.detection_counts.at(d) << '\n';
    }
  }
}

std::vector<RunsCsvRow> read_runs_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open runs csv: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("runs csv is empty: " + path.string());
  std::vector<RunsCsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 8) throw std::runtime_error("runs csv: bad row: " + line);
    RunsCsvRow row;
    row.run_id = std::stoi(f[0]);
    row.target_size = parse_double(f[1]);
    row.positive = f[2] == "1";
    row.concept_orig = std::stoi(f[3]);
    row.concept_drift = std::stoi(f[4]);
    row.computed_size = parse_double(f[5]);
    row.detector = f[6];
    row.detection_count = std::stol(f[7]);
    rows.push_back(row);
  }
  return rows;
}

void write_metrics_csv(const std::filesystem::path& path,
                       const std::vector<MetricsRow>& rows) {
  auto out = open_out(path);
  out << "detector,target_size,accuracy,f1,fpr,fnr,threshold\n";
  for (const auto& r : rows) {
    out << r.detector << ',' << format_double(r.target_size) << ','
        << format_double(r.accuracy) << ',' << format_double(r.f1) << ','
        << format_double(r.fpr) << ',' << format_double(r.fnr) << ',' << r.threshold << '\n';
  }
}

void write_trace_csv(const std::filesystem::path& path, const RunResult& result) {
  auto out = open_out(path);
  out << "batch,overall_accuracy,subgroup_accuracy\n";
  for (std::size_t b = 0; b < result.batch_accuracy.size(); ++b) {
    out << b << ',' << format_double(result.batch_accuracy[b]) << ','
        << format_double(result.batch_subgroup_accuracy[b]) << '\n';
  }
}

void write_manifest(const std::filesystem::path& path, const ExperimentConfig& cfg,
                    const std::vector<RunResult>& results) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json jc;
  jc["subgroup_sizes"] = cfg.subgroup_sizes;
  jc["runs_per_size"] = cfg.runs_per_size;
  jc["train_size"] = cfg.train_size;
  jc["batch_count"] = cfg.batch_count;
  jc["batch_size"] = cfg.batch_size;
  jc["drift_center"] = cfg.drift_center;
  jc["drift_width"] = cfg.drift_width;
  jc["perturbation"] = cfg.perturbation;
  jc["subgroup_tolerance"] = cfg.subgroup_tolerance;
  jc["subgroup_max_iter"] = cfg.subgroup_max_iter;
  jc["calibration_fraction"] = cfg.calibration_fraction;
  jc["seed"] = cfg.seed;
  jc["commission_rule"] =
      cfg.commission_rule == CommissionRule::zero_below_75k ? "zero_below_75k"
                                                            : "zero_at_or_above_75k";
  nlohmann::ordered_json jd = nlohmann::ordered_json::array();
  for (const auto& d : cfg.detectors) jd.push_back(detector_json(d));
  jc["detectors"] = jd;
  j["config"] = jc;

  nlohmann::ordered_json jruns = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json jr;
    jr["run_id"] = r.run_id;
    jr["target_size"] = r.target_size;
    jr["positive"] = r.positive;
    jr["concept_orig"] = r.concept_orig;
    jr["concept_drift"] = r.concept_drift;
    jr["computed_size"] = r.computed_size;
    jr["residual_gap"] = r.residual_gap;
    jr["converged"] = r.subgroup_converged;
    jr["training_accuracy"] = r.training_accuracy;
    nlohmann::ordered_json js = nlohmann::ordered_json::array();
    for (const auto& s : r.subgroup.slices()) {
      nlohmann::ordered_json jslice;
      jslice["attribute"] = std::string(attribute_name(s.attribute));
      jslice["lo"] = s.lo;
      jslice["hi"] = s.hi;
      js.push_back(jslice);
    }
    jr["slices"] = js;
    jruns.push_back(jr);
  }
  j["runs"] = jruns;

  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

ExperimentConfig read_manifest_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open manifest: " + path.string());
  nlohmann::ordered_json j;
  in >> j;
  const auto& jc = j.at("config");
  ExperimentConfig cfg;
  cfg.subgroup_sizes = jc.at("subgroup_sizes").get<std::vector<double>>();
  cfg.runs_per_size = jc.at("runs_per_size").get<int>();
  cfg.train_size = jc.at("train_size").get<int>();
  cfg.batch_count = jc.at("batch_count").get<int>();
  cfg.batch_size = jc.at("batch_size").get<int>();
  cfg.drift_center = jc.at("drift_center").get<double>();
  cfg.drift_width = jc.at("drift_width").get<double>();
  cfg.perturbation = jc.at("perturbation").get<double>();
  cfg.subgroup_tolerance = jc.at("subgroup_tolerance").get<double>();
  cfg.subgroup_max_iter = jc.at("subgroup_max_iter").get<int>();
  cfg.calibration_fraction = jc.at("calibration_fraction").get<double>();
  cfg.seed = jc.at("seed").get<std::uint64_t>();
  cfg.commission_rule = jc.at("commission_rule").get<std::string>() == "zero_below_75k"
                            ? CommissionRule::zero_below_75k
                            : CommissionRule::zero_at_or_above_75k;
  cfg.detectors.clear();
  for (const auto& jd : jc.at("detectors")) cfg.detectors.push_back(detector_from_json(jd));
  cfg.validate();
  return cfg;
}

}  // namespace subdrift
