#include "subdrift/subgroup.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace subdrift {

namespace {

bool on_grid(double v, const AttributeMeta& m) {
  double steps = (v - m.lo) / m.step;
  return std::abs(steps - std::round(steps)) < 1e-9;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.0f", v);
  return buf;
}

}  // namespace

void validate_slice(const Slice& s) {
  const auto& m = attribute_meta(s.attribute);
  if (!(s.lo < s.hi)) throw std::invalid_argument("slice bounds must satisfy lo < hi");
  if (s.lo < m.lo || s.hi > m.hi + m.step) {
    throw std::invalid_argument("slice outside attribute support");
  }
  if (!on_grid(s.lo, m) || !on_grid(s.hi, m)) {
    throw std::invalid_argument("slice endpoints must lie on the attribute grid");
  }
}

double slice_probability(const Slice& s) {
  validate_slice(s);
  const auto& m = attribute_meta(s.attribute);
  double cells = std::round((s.hi - s.lo) / m.step);
  return cells / static_cast<double>(m.support_count());
}

std::string slice_description(const Slice& s) {
  std::string out(attribute_name(s.attribute));
  out += " in [" + format_number(s.lo) + ", " + format_number(s.hi) + ")";
  return out;
}

void Subgroup::set_slice(const Slice& s) {
  validate_slice(s);
  auto it = std::find_if(slices_.begin(), slices_.end(), [&](const Slice& other) {
    return other.attribute == s.attribute;
  });
  if (it != slices_.end()) {
    *it = s;
  } else {
    slices_.push_back(s);
    std::sort(slices_.begin(), slices_.end(), [](const Slice& a, const Slice& b) {
      return static_cast<int>(a.attribute) < static_cast<int>(b.attribute);
    });
  }
}

double Subgroup::computed_size() const {
  double p = 1.0;
  for (const auto& s : slices_) p *= slice_probability(s);
  return p;
}

bool Subgroup::contains(const Record& r) const {
  for (const auto& s : slices_) {
    double v = r.value(s.attribute);
    if (v < s.lo || v >= s.hi) return false;
  }
  return true;
}

std::string Subgroup::description() const {
  if (slices_.empty()) return "(full population)";
  std::string out;
  for (std::size_t i = 0; i < slices_.size(); ++i) {
    if (i) out += " and ";
    out += slice_description(slices_[i]);
  }
  return out;
}

SubgroupGenResult generate_subgroup(double target, double tolerance, int max_iter,
                                    Rng& rng, std::vector<double>* gap_trace) {
  if (!(target > 0.0 && target <= 1.0)) {
    throw std::invalid_argument("subgroup target size must be in (0, 1]");
  }
  if (!(tolerance >= 0.0)) throw std::invalid_argument("tolerance must be >= 0");
  if (max_iter < 0) throw std::invalid_argument("max_iter must be >= 0");

  SubgroupGenResult res;
  res.computed_size = 1.0;
  res.residual_gap = std::abs(1.0 - target);
  res.converged = res.residual_gap <= tolerance;
  if (res.converged) return res;

  auto attrs = independent_attributes();
  for (int iter = 0; iter < max_iter; ++iter) {
    res.iterations = iter + 1;
    Attribute a = attrs[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(attrs.size()) - 1))];
    const auto& m = attribute_meta(a);
    std::int64_t n = m.support_count();
    std::int64_t ci = rng.uniform_int(0, n - 1);
    std::int64_t di = rng.uniform_int(ci + 1, n);
    Slice cand{a, m.grid_value(ci), m.grid_value(di)};

    double old_factor = 1.0;
    for (const auto& s : res.subgroup.slices()) {
      if (s.attribute == a) old_factor = slice_probability(s);
    }
    double cand_size = res.computed_size / old_factor * slice_probability(cand);
    if (std::abs(cand_size - target) < res.residual_gap) {
      res.subgroup.set_slice(cand);
      res.computed_size = cand_size;
      res.residual_gap = std::abs(cand_size - target);
      if (gap_trace) gap_trace->push_back(res.residual_gap);
      if (res.residual_gap <= tolerance) {
        res.converged = true;
        return res;
      }
    }
  }
  return res;
}

}  // namespace subdrift
