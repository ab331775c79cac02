#include "subdrift/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "subdrift/io.hpp"

namespace subdrift {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

[[noreturn]] void fail(const std::string& origin, int lineno, const std::string& msg) {
  throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": " + msg);
}

long parse_int(const std::string& origin, int lineno, const std::string& v) {
  long out{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    fail(origin, lineno, "expected an integer, got '" + v + "'");
  }
  return out;
}

double parse_float(const std::string& origin, int lineno, const std::string& v) {
  try {
    return parse_double(v);
  } catch (const std::exception&) {
    fail(origin, lineno, "expected a number, got '" + v + "'");
  }
}

bool parse_bool(const std::string& origin, int lineno, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(origin, lineno, "expected a boolean, got '" + v + "'");
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
  ExperimentConfig cfg;
  std::stringstream ss(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(ss, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) fail(origin, lineno, "expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(origin, lineno, "empty key");
    if (value.empty()) fail(origin, lineno, "empty value for key '" + key + "'");

    if (key == "subgroup_sizes") {
      cfg.subgroup_sizes.clear();
      for (const auto& item : split_list(value)) {
        cfg.subgroup_sizes.push_back(parse_float(origin, lineno, item));
      }
    } else if (key == "runs_per_size") {
      cfg.runs_per_size = static_cast<int>(parse_int(origin, lineno, value));
    } else if (key == "train_size") {
      cfg.train_size = static_cast<int>(parse_int(origin, lineno, value));
    } else if (key == "batch_count") {
      cfg.batch_count = static_cast<int>(parse_int(origin, lineno, value));
    } else if (key == "batch_size") {
      cfg.batch_size = static_cast<int>(parse_int(origin, lineno, value));
    } else if (key == "drift_center") {
      cfg.drift_center = parse_float(origin, lineno, value);
    } else if (key == "drift_width") {
      cfg.drift_width = parse_float(origin, lineno, value);
    } else if (key == "perturbation") {
      cfg.perturbation = parse_float(origin, lineno, value);
    } else if (key == "subgroup_tolerance") {
      cfg.subgroup_tolerance = parse_float(origin, lineno, value);
    } else if (key == "subgroup_max_iter") {
      cfg.subgroup_max_iter = static_cast<int>(parse_int(origin, lineno, value));
    } else if (key == "calibration_fraction") {
      cfg.calibration_fraction = parse_float(origin, lineno, value);
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_int(origin, lineno, value));
    } else if (key == "commission_rule") {
      if (value == "zero_below_75k") {
        cfg.commission_rule = CommissionRule::zero_below_75k;
      } else if (value == "zero_at_or_above_75k") {
        cfg.commission_rule = CommissionRule::zero_at_or_above_75k;
      } else {
        fail(origin, lineno,
             "commission_rule must be zero_below_75k or zero_at_or_above_75k");
      }
    } else if (key == "threads") {
      cfg.threads = static_cast<int>(parse_int(origin, lineno, value));
    } else if (key == "write_traces") {
      cfg.write_traces = parse_bool(origin, lineno, value);
    } else if (key == "detectors") {
      cfg.detectors.clear();
      for (const auto& item : split_list(value)) {
        if (item == "ddm") {
          cfg.detectors.emplace_back(DdmConfig{});
        } else if (item == "eddm") {
          cfg.detectors.emplace_back(EddmConfig{});
        } else if (item == "hddm_a") {
          cfg.detectors.emplace_back(HddmConfig{});
        } else if (item == "fhddm") {
          cfg.detectors.emplace_back(FhddmConfig{});
        } else {
          fail(origin, lineno, "unknown detector '" + item + "'");
        }
      }
    } else if (key == "ddm.warning_multiplier" || key == "ddm.drift_multiplier" ||
               key == "ddm.min_samples" || key == "eddm.warning_ratio" ||
               key == "eddm.drift_ratio" || key == "eddm.min_errors" ||
               key == "hddm_a.warning_delta" || key == "hddm_a.drift_delta" ||
               key == "fhddm.window" || key == "fhddm.delta") {
      std::string det = key.substr(0, key.find('.'));
      std::string field = key.substr(key.find('.') + 1);
      bool applied = false;
      for (auto& d : cfg.detectors) {
        if (detector_name(d) != det) continue;
        applied = true;
        if (auto* ddm = std::get_if<DdmConfig>(&d)) {
          if (field == "warning_multiplier") ddm->warning_multiplier = parse_float(origin, lineno, value);
          if (field == "drift_multiplier") ddm->drift_multiplier = parse_float(origin, lineno, value);
          if (field == "min_samples") ddm->min_samples = static_cast<int>(parse_int(origin, lineno, value));
        } else if (auto* eddm = std::get_if<EddmConfig>(&d)) {
          if (field == "warning_ratio") eddm->warning_ratio = parse_float(origin, lineno, value);
          if (field == "drift_ratio") eddm->drift_ratio = parse_float(origin, lineno, value);
          if (field == "min_errors") eddm->min_errors = static_cast<int>(parse_int(origin, lineno, value));
        } else if (auto* hddm = std::get_if<HddmConfig>(&d)) {
          if (field == "warning_delta") hddm->warning_delta = parse_float(origin, lineno, value);
          if (field == "drift_delta") hddm->drift_delta = parse_float(origin, lineno, value);
        } else if (auto* fhddm = std::get_if<FhddmConfig>(&d)) {
          if (field == "window") fhddm->window = static_cast<int>(parse_int(origin, lineno, value));
          if (field == "delta") fhddm->delta = parse_float(origin, lineno, value);
        }
      }
      if (!applied) {
        fail(origin, lineno, "detector '" + det + "' is not in the detectors list");
      }
    } else {
      fail(origin, lineno, "unknown key '" + key + "'");
    }
  }
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw std::invalid_argument(origin + ": " + e.what());
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open config file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path.filename().string());
}

}  // namespace subdrift
