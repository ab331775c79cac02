#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace subdrift {

enum class DetectorStatus { stable, warning, drift };

struct DdmConfig {
  double warning_multiplier = 2.0;
  double drift_multiplier = 4.5;
  int min_samples = 30;
  void validate() const;
};

struct EddmConfig {
  double warning_ratio = 0.90;
  double drift_ratio = 0.80;
  int min_errors = 100;
  void validate() const;
};

struct HddmConfig {
  double warning_delta = 0.005;
  double drift_delta = 1e-5;
  void validate() const;
};

struct FhddmConfig {
  int window = 100;
  double delta = 1e-8;
  void validate() const;
};

// A detector consumes a stream of per-sample error bits (1 = misclassified)
// and reports its status after each. Emitting drift resets internal state,
// so post-drift behavior matches a freshly constructed detector.
class Detector {
 public:
  virtual ~Detector() = default;
  virtual DetectorStatus update(int error) = 0;
  virtual void reset() = 0;
};

class DdmDetector final : public Detector {
 public:
  explicit DdmDetector(DdmConfig cfg = {});
  DetectorStatus update(int error) override;
  void reset() override;

 private:
  DdmConfig cfg_;
  long n_ = 0;
  double p_ = 0.0;
  double p_min_ = 0.0;
  double s_min_ = 0.0;
  bool has_min_ = false;
};

class EddmDetector final : public Detector {
 public:
  explicit EddmDetector(EddmConfig cfg = {});
  DetectorStatus update(int error) override;
  void reset() override;

 private:
  EddmConfig cfg_;
  long n_ = 0;
  long n_errors_ = 0;
  long last_error_idx_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double m2s_max_ = 0.0;
  bool has_max_ = false;
};

class HddmADetector final : public Detector {
 public:
  explicit HddmADetector(HddmConfig cfg = {});
  DetectorStatus update(int error) override;
  void reset() override;

 private:
  bool cut_exceeded(double delta) const;
  HddmConfig cfg_;
  long n_ = 0;
  double c_ = 0.0;
  long n0_ = 0;
  double c0_ = 0.0;
};

class FhddmDetector final : public Detector {
 public:
  explicit FhddmDetector(FhddmConfig cfg = {});
  DetectorStatus update(int error) override;
  void reset() override;

 private:
  FhddmConfig cfg_;
  double epsilon_;
  std::vector<std::int8_t> window_;  // ring buffer of correctness bits
  std::size_t head_ = 0;
  std::size_t filled_ = 0;
  long correct_sum_ = 0;
  double mu_max_ = 0.0;
};

using DetectorConfig = std::variant<DdmConfig, EddmConfig, HddmConfig, FhddmConfig>;

std::string detector_name(const DetectorConfig& cfg);
std::unique_ptr<Detector> make_detector(const DetectorConfig& cfg);
std::vector<DetectorConfig> default_detector_suite();

}  // namespace subdrift
