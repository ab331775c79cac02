#pragma once

#include <optional>

#include "subdrift/agrawal.hpp"
#include "subdrift/subgroup.hpp"

namespace subdrift {

// Sigmoid mixing weight: probability that a subgroup member is labeled by the
// drift concept at time t. Rises from ~0 to ~1 around `center` over `width`.
double mix_probability(double t, double center, double width);

struct DriftSchedule {
  ConceptId concept_orig;
  ConceptId concept_drift;  // only consulted when enabled
  double center = 100.0;    // in batches
  double width = 100.0;     // in batches, > 0
  Subgroup subgroup;
  bool enabled = true;

  void validate() const;
};

// Label for an unperturbed record at time t. Outside the subgroup (or with
// drift disabled) this is exactly the original concept's label.
int label_with_drift(const Record& r, double t, const DriftSchedule& sched, Rng& rng);

struct StreamSample {
  Record record;  // perturbed
  int label;      // assigned before perturbation
  bool in_subgroup;
  int batch;
};

// Batched sample stream; every sample in batch b uses t = b.
class DriftStream {
 public:
  DriftStream(DriftSchedule sched, int batch_count, int batch_size,
              double perturbation, CommissionRule rule, Rng rng);

  std::optional<StreamSample> next();

  int batch_count() const { return batch_count_; }
  int batch_size() const { return batch_size_; }

 private:
  DriftSchedule sched_;
  int batch_count_;
  int batch_size_;
  double perturbation_;
  CommissionRule rule_;
  Rng rng_;
  long emitted_ = 0;
};

}  // namespace subdrift
