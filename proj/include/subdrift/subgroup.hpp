#pragma once

#include <string>
#include <vector>

#include "subdrift/agrawal.hpp"
#include "subdrift/rng.hpp"

namespace subdrift {

// Half-open interval [lo, hi) whose endpoints sit on the attribute's grid.
struct Slice {
  Attribute attribute;
  double lo;
  double hi;
};

// Fraction of the attribute's support covered by the slice. Exact on the
// discrete grid: (hi - lo) / step divided by the support count. Throws
// std::invalid_argument for endpoints off the grid, outside the support,
// or with lo >= hi.
double slice_probability(const Slice& s);

void validate_slice(const Slice& s);

std::string slice_description(const Slice& s);

class Subgroup {
 public:
  Subgroup() = default;

  // Adds the slice, or replaces an existing slice on the same attribute.
  void set_slice(const Slice& s);

  const std::vector<Slice>& slices() const { return slices_; }
  bool empty() const { return slices_.empty(); }

  // Product of slice probabilities; 1.0 for the empty subgroup.
  double computed_size() const;

  bool contains(const Record& r) const;

  std::string description() const;

 private:
  std::vector<Slice> slices_;  // sorted by attribute id
};

struct SubgroupGenResult {
  Subgroup subgroup;
  double computed_size = 1.0;
  double residual_gap = 0.0;  // |computed_size - target| at termination
  int iterations = 0;
  bool converged = false;
};

// Greedy randomized construction: propose one random slice per iteration on a
// uniformly chosen independent attribute (replacing any existing slice there)
// and keep it only if it moves computed_size strictly closer to the target.
// Stops inside the tolerance or after max_iter proposals. When gap_trace is
// given it records |computed_size - target| after each accepted slice.
SubgroupGenResult generate_subgroup(double target, double tolerance, int max_iter,
                                    Rng& rng, std::vector<double>* gap_trace = nullptr);

}  // namespace subdrift
