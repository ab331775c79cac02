#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "subdrift/config.hpp"

using namespace subdrift;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config_text(text, "test.cfg");
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return "";
}

bool error_contains(const std::string& text, const std::string& needle) {
  std::string msg = error_of(text);
  INFO("error message: ", msg);
  return msg.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("empty config keeps the defaults") {
  ExperimentConfig cfg = parse_config_text("", "test.cfg");
  CHECK(cfg.subgroup_sizes == default_size_grid());
  CHECK(cfg.runs_per_size == 20);
  CHECK(cfg.train_size == 10000);
  CHECK(cfg.batch_count == 200);
  CHECK(cfg.batch_size == 1000);
  CHECK(cfg.perturbation == 0.25);
  CHECK(cfg.calibration_fraction == 0.30);
  CHECK(cfg.commission_rule == CommissionRule::zero_below_75k);
  REQUIRE(cfg.detectors.size() == 4);
  CHECK(detector_name(cfg.detectors[0]) == "ddm");
  CHECK(detector_name(cfg.detectors[3]) == "fhddm");
}

TEST_CASE("every key parses and lands in the config") {
  const std::string text = R"(
# experiment shape
subgroup_sizes = 0.02, 0.1, 1.0
runs_per_size = 6
train_size = 2000
batch_count = 80
batch_size = 250

# drift placement
drift_center = 40
drift_width = 25.5
perturbation = 0.1

subgroup_tolerance = 0.005
subgroup_max_iter = 500
calibration_fraction = 0.34   # 1 of 3 per stratum
seed = 99
commission_rule = zero_at_or_above_75k
threads = 2
write_traces = false

detectors = ddm, fhddm
ddm.warning_multiplier = 2.5
ddm.drift_multiplier = 3.5
ddm.min_samples = 50
fhddm.window = 200
fhddm.delta = 1e-6
)";
  ExperimentConfig cfg = parse_config_text(text, "test.cfg");
  REQUIRE(cfg.subgroup_sizes.size() == 3);
  CHECK(cfg.subgroup_sizes[0] == 0.02);
  CHECK(cfg.subgroup_sizes[2] == 1.0);
  CHECK(cfg.runs_per_size == 6);
  CHECK(cfg.train_size == 2000);
  CHECK(cfg.batch_count == 80);
  CHECK(cfg.batch_size == 250);
  CHECK(cfg.drift_center == 40.0);
  CHECK(cfg.drift_width == 25.5);
  CHECK(cfg.perturbation == 0.1);
  CHECK(cfg.subgroup_tolerance == 0.005);
  CHECK(cfg.subgroup_max_iter == 500);
  CHECK(cfg.calibration_fraction == 0.34);
  CHECK(cfg.seed == 99);
  CHECK(cfg.commission_rule == CommissionRule::zero_at_or_above_75k);
  CHECK(cfg.threads == 2);
  CHECK(!cfg.write_traces);

  REQUIRE(cfg.detectors.size() == 2);
  const auto& ddm = std::get<DdmConfig>(cfg.detectors[0]);
  CHECK(ddm.warning_multiplier == 2.5);
  CHECK(ddm.drift_multiplier == 3.5);
  CHECK(ddm.min_samples == 50);
  const auto& fhddm = std::get<FhddmConfig>(cfg.detectors[1]);
  CHECK(fhddm.window == 200);
  CHECK(fhddm.delta == 1e-6);
}

TEST_CASE("detector list controls membership and order") {
  ExperimentConfig cfg = parse_config_text(
      "detectors = fhddm, hddm_a\n"
      "hddm_a.drift_delta = 0.0005\n",
      "test.cfg");
  REQUIRE(cfg.detectors.size() == 2);
  CHECK(detector_name(cfg.detectors[0]) == "fhddm");
  CHECK(detector_name(cfg.detectors[1]) == "hddm_a");
  CHECK(std::get<HddmConfig>(cfg.detectors[1]).drift_delta == 0.0005);
  // untouched fields keep their defaults
  CHECK(std::get<HddmConfig>(cfg.detectors[1]).warning_delta == 0.005);
}

TEST_CASE("parse errors carry the origin and line number") {
  CHECK(error_contains("bogus_key = 3\n", "test.cfg:1"));
  CHECK(error_contains("bogus_key = 3\n", "unknown key 'bogus_key'"));
  CHECK(error_contains("\n\nseed 42\n", "test.cfg:3"));
  CHECK(error_contains("seed 42\n", "expected 'key = value'"));
  CHECK(error_contains("seed =\n", "empty value"));
  CHECK(error_contains("seed = twelve\n", "expected an integer"));
  CHECK(error_contains("drift_width = wide\n", "expected a number"));
  CHECK(error_contains("write_traces = maybe\n", "expected a boolean"));
  CHECK(error_contains("detectors = ddm, adwin\n", "unknown detector 'adwin'"));
  CHECK(error_contains("commission_rule = flipped\n", "commission_rule must be"));
  CHECK(error_contains("= 3\n", "empty key"));
}

TEST_CASE("detector parameters require the detector to be listed") {
  CHECK(error_contains("detectors = fhddm\nddm.min_samples = 40\n",
                       "detector 'ddm' is not in the detectors list"));
  CHECK(error_contains("detectors = fhddm\nddm.min_samples = 40\n", "test.cfg:2"));
}

TEST_CASE("semantic validation failures point at the file") {
  CHECK(error_contains("runs_per_size = 3\n", "test.cfg: "));
  CHECK(error_contains("runs_per_size = 3\n", "runs_per_size"));
  CHECK(error_contains("subgroup_sizes = 0.5, 2.0\n", "sizes must be in (0, 1]"));
  CHECK(error_contains("calibration_fraction = 0.01\n", "calibration split"));
}

TEST_CASE("config files parse like inline text") {
  namespace fs = std::filesystem;
  fs::path path = fs::temp_directory_path() / "subdrift_test_config.cfg";
  {
    std::ofstream out(path);
    out << "runs_per_size = 4\nseed = 5\n";
  }
  ExperimentConfig cfg = parse_config_file(path);
  CHECK(cfg.runs_per_size == 4);
  CHECK(cfg.seed == 5);
  fs::remove(path);

  CHECK_THROWS_AS(parse_config_file(fs::path("/nonexistent/subdrift.cfg")),
                  std::invalid_argument);
}
