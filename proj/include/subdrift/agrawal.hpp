#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "subdrift/rng.hpp"

namespace subdrift {

enum class Attribute : int {
  salary = 0,
  commission,
  age,
  elevel,
  car,
  zipcode,
  hvalue,
  hyears,
  loan,
};

inline constexpr int kAttributeCount = 9;
inline constexpr int kConceptCount = 10;

std::string_view attribute_name(Attribute a);
Attribute attribute_from_name(std::string_view name);

struct Record {
  double salary = 0;
  double commission = 0;
  int age = 0;
  int elevel = 0;
  int car = 0;
  int zipcode = 0;
  double hvalue = 0;
  int hyears = 0;
  double loan = 0;

  double value(Attribute a) const;
};

// Whether commission is zero below the 75k salary line (the default) or
// above it (the original generator's behavior).
enum class CommissionRule { zero_below_75k, zero_at_or_above_75k };

struct AttributeMeta {
  Attribute id;
  bool categorical;
  double lo;    // support minimum
  double hi;    // support maximum (inclusive)
  double step;  // grid spacing

  std::int64_t support_count() const;
  // Grid value at index i in [0, support_count()).
  double grid_value(std::int64_t i) const;
};

const AttributeMeta& attribute_meta(Attribute a);

// Attributes sampled independently of any other (everything except
// commission, which depends on salary, and hvalue, which depends on zipcode).
std::span<const Attribute> independent_attributes();

class ConceptId {
 public:
  explicit ConceptId(int index);
  int index() const { return index_; }
  friend bool operator==(ConceptId a, ConceptId b) { return a.index_ == b.index_; }

 private:
  int index_;
};

Record sample_record(Rng& rng, CommissionRule rule = CommissionRule::zero_below_75k);

// Group A -> 1, Group B -> 0.
int classify(const Record& r, ConceptId concept_id);

// Shifts each numeric attribute by uniform noise spanning `magnitude` of its
// support width, clamped to the support. Categorical attributes, and the
// label implied by the record, are untouched. Always consumes the same
// number of draws regardless of magnitude.
Record perturb(const Record& r, double magnitude, Rng& rng);

}  // namespace subdrift
