#include "subdrift/drift.hpp"

#include <cmath>
#include <stdexcept>

namespace subdrift {

double mix_probability(double t, double center, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("drift width must be > 0");
  return 1.0 / (1.0 + std::exp(-4.0 * (t - center) / width));
}

void DriftSchedule::validate() const {
  if (!(width > 0.0)) throw std::invalid_argument("drift width must be > 0");
  if (enabled && concept_orig == concept_drift) {
    throw std::invalid_argument("drift schedule needs distinct concepts");
  }
}

int label_with_drift(const Record& r, double t, const DriftSchedule& sched, Rng& rng) {
  if (!sched.enabled || !sched.subgroup.contains(r)) {
    return classify(r, sched.concept_orig);
  }
  double p = mix_probability(t, sched.center, sched.width);
  ConceptId active = rng.bernoulli(p) ? sched.concept_drift : sched.concept_orig;
  return classify(r, active);
}

DriftStream::DriftStream(DriftSchedule sched, int batch_count, int batch_size,
                         double perturbation, CommissionRule rule, Rng rng)
    : sched_(std::move(sched)),
      batch_count_(batch_count),
      batch_size_(batch_size),
      perturbation_(perturbation),
      rule_(rule),
      rng_(rng) {
  sched_.validate();
  if (batch_count < 0 || batch_size <= 0) {
    throw std::invalid_argument("stream needs batch_count >= 0 and batch_size > 0");
  }
}

std::optional<StreamSample> DriftStream::next() {
  long total = static_cast<long>(batch_count_) * batch_size_;
  if (emitted_ >= total) return std::nullopt;
  StreamSample out;
  out.batch = static_cast<int>(emitted_ / batch_size_);
  Record raw = sample_record(rng_, rule_);
  out.label = label_with_drift(raw, static_cast<double>(out.batch), sched_, rng_);
  out.in_subgroup = sched_.subgroup.contains(raw);
  out.record = perturb(raw, perturbation_, rng_);
  ++emitted_;
  return out;
}

}  // namespace subdrift
