#include "subdrift/detectors.hpp"

#include <cmath>
#include <stdexcept>

namespace subdrift {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

int check_error_bit(int error) {
  if (error != 0 && error != 1) throw std::invalid_argument("error bit must be 0 or 1");
  return error;
}

}  // namespace

void DdmConfig::validate() const {
  require(warning_multiplier > 0.0, "ddm: warning multiplier must be > 0");
  require(drift_multiplier > warning_multiplier,
          "ddm: drift multiplier must exceed the warning multiplier");
  require(min_samples >= 1, "ddm: min_samples must be >= 1");
}

void EddmConfig::validate() const {
  require(warning_ratio > 0.0 && warning_ratio < 1.0, "eddm: warning ratio must be in (0, 1)");
  require(drift_ratio > 0.0 && drift_ratio < warning_ratio,
          "eddm: drift ratio must be in (0, warning ratio)");
  require(min_errors >= 1, "eddm: min_errors must be >= 1");
}

void HddmConfig::validate() const {
  require(warning_delta > 0.0 && warning_delta < 1.0, "hddm: warning delta must be in (0, 1)");
  require(drift_delta > 0.0 && drift_delta < warning_delta,
          "hddm: drift delta must be in (0, warning delta)");
}

void FhddmConfig::validate() const {
  require(window >= 1, "fhddm: window must be >= 1");
  require(delta > 0.0 && delta < 1.0, "fhddm: delta must be in (0, 1)");
}

DdmDetector::DdmDetector(DdmConfig cfg) : cfg_(cfg) { cfg_.validate(); }

void DdmDetector::reset() {
  n_ = 0;
  p_ = 0.0;
  p_min_ = 0.0;
  s_min_ = 0.0;
  has_min_ = false;
}

DetectorStatus DdmDetector::update(int error) {
  check_error_bit(error);
  ++n_;
  p_ += (error - p_) / static_cast<double>(n_);
  double s = std::sqrt(p_ * (1.0 - p_) / static_cast<double>(n_));
  if (n_ < cfg_.min_samples) return DetectorStatus::stable;
  if (!has_min_ || p_ + s <= p_min_ + s_min_) {
    p_min_ = p_;
    s_min_ = s;
    has_min_ = true;
  }
  if (p_ + s > p_min_ + cfg_.drift_multiplier * s_min_) {
    reset();
    return DetectorStatus::drift;
  }
  if (p_ + s > p_min_ + cfg_.warning_multiplier * s_min_) return DetectorStatus::warning;
  return DetectorStatus::stable;
}

EddmDetector::EddmDetector(EddmConfig cfg) : cfg_(cfg) { cfg_.validate(); }

void EddmDetector::reset() {
  n_ = 0;
  n_errors_ = 0;
  last_error_idx_ = 0;
  mean_ = 0.0;
  m2_ = 0.0;
  m2s_max_ = 0.0;
  has_max_ = false;
}

DetectorStatus EddmDetector::update(int error) {
  check_error_bit(error);
  ++n_;
  if (error != 1) return DetectorStatus::stable;
  ++n_errors_;
  long idx = n_ - 1;
  double dist = static_cast<double>(idx - last_error_idx_);
  last_error_idx_ = idx;
  double old_mean = mean_;
  mean_ += (dist - mean_) / static_cast<double>(n_errors_);
  m2_ += (dist - mean_) * (dist - old_mean);
  double std_dev = std::sqrt(m2_ / static_cast<double>(n_errors_));
  double m2s = mean_ + 2.0 * std_dev;
  if (n_errors_ < cfg_.min_errors) return DetectorStatus::stable;
  if (!has_max_ || m2s > m2s_max_) {
    m2s_max_ = m2s;
    has_max_ = true;
    return DetectorStatus::stable;
  }
  double ratio = m2s / m2s_max_;
  if (ratio < cfg_.drift_ratio) {
    reset();
    return DetectorStatus::drift;
  }
  if (ratio < cfg_.warning_ratio) return DetectorStatus::warning;
  return DetectorStatus::stable;
}

HddmADetector::HddmADetector(HddmConfig cfg) : cfg_(cfg) { cfg_.validate(); }

void HddmADetector::reset() {
  n_ = 0;
  c_ = 0.0;
  n0_ = 0;
  c0_ = 0.0;
}

bool HddmADetector::cut_exceeded(double delta) const {
  if (n0_ == 0 || n0_ == n_) return false;
  double inv_nhat = 1.0 / static_cast<double>(n0_) - 1.0 / static_cast<double>(n_);
  double eps = std::sqrt(inv_nhat / 2.0 * std::log(1.0 / delta));
  return c_ / static_cast<double>(n_) - c0_ / static_cast<double>(n0_) >= eps;
}

DetectorStatus HddmADetector::update(int error) {
  check_error_bit(error);
  ++n_;
  c_ += error;
  auto bound = [](long n, double delta) {
    return std::sqrt(1.0 / (2.0 * static_cast<double>(n)) * std::log(1.0 / delta));
  };
  if (n0_ == 0) {
    n0_ = n_;
    c0_ = c_;
  } else if (c_ / static_cast<double>(n_) + bound(n_, cfg_.drift_delta) <=
             c0_ / static_cast<double>(n0_) + bound(n0_, cfg_.drift_delta)) {
    n0_ = n_;
    c0_ = c_;
  }
  if (cut_exceeded(cfg_.drift_delta)) {
    reset();
    return DetectorStatus::drift;
  }
  if (cut_exceeded(cfg_.warning_delta)) return DetectorStatus::warning;
  return DetectorStatus::stable;
}

FhddmDetector::FhddmDetector(FhddmConfig cfg)
    : cfg_(cfg),
      epsilon_(0.0) {
  cfg_.validate();
  epsilon_ = std::sqrt(std::log(1.0 / cfg_.delta) / (2.0 * static_cast<double>(cfg_.window)));
  window_.assign(static_cast<std::size_t>(cfg_.window), 0);
}

void FhddmDetector::reset() {
  head_ = 0;
  filled_ = 0;
  correct_sum_ = 0;
  mu_max_ = 0.0;
}

DetectorStatus FhddmDetector::update(int error) {
  check_error_bit(error);
  std::int8_t correct = static_cast<std::int8_t>(1 - error);
  if (filled_ == window_.size()) {
    correct_sum_ -= window_[head_];
  } else {
    ++filled_;
  }
  window_[head_] = correct;
  correct_sum_ += correct;
  head_ = (head_ + 1) % window_.size();
  if (filled_ < window_.size()) return DetectorStatus::stable;
  double mu = static_cast<double>(correct_sum_) / static_cast<double>(cfg_.window);
  if (mu > mu_max_) mu_max_ = mu;
  if (mu_max_ - mu >= epsilon_) {
    reset();
    return DetectorStatus::drift;
  }
  return DetectorStatus::stable;
}

std::string detector_name(const DetectorConfig& cfg) {
  struct Visitor {
    std::string operator()(const DdmConfig&) const { return "ddm"; }
    std::string operator()(const EddmConfig&) const { return "eddm"; }
    std::string operator()(const HddmConfig&) const { return "hddm_a"; }
    std::string operator()(const FhddmConfig&) const { return "fhddm"; }
  };
  return std::visit(Visitor{}, cfg);
}

std::unique_ptr<Detector> make_detector(const DetectorConfig& cfg) {
  struct Visitor {
    std::unique_ptr<Detector> operator()(const DdmConfig& c) const {
      return std::make_unique<DdmDetector>(c);
    }
    std::unique_ptr<Detector> operator()(const EddmConfig& c) const {
      return std::make_unique<EddmDetector>(c);
    }
    std::unique_ptr<Detector> operator()(const HddmConfig& c) const {
      return std::make_unique<HddmADetector>(c);
    }
    std::unique_ptr<Detector> operator()(const FhddmConfig& c) const {
      return std::make_unique<FhddmDetector>(c);
    }
  };
  return std::visit(Visitor{}, cfg);
}

std::vector<DetectorConfig> default_detector_suite() {
  return {DdmConfig{}, EddmConfig{}, HddmConfig{}, FhddmConfig{}};
}

}  // namespace subdrift
