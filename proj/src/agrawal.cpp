#include "subdrift/agrawal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace subdrift {

namespace {

constexpr std::array<AttributeMeta, kAttributeCount> kMeta = {{
    {Attribute::salary, false, 20000.0, 150000.0, 1000.0},
    {Attribute::commission, false, 10000.0, 75000.0, 1000.0},
    {Attribute::age, false, 20.0, 80.0, 1.0},
    {Attribute::elevel, true, 0.0, 4.0, 1.0},
    {Attribute::car, true, 1.0, 20.0, 1.0},
    {Attribute::zipcode, true, 0.0, 8.0, 1.0},
    {Attribute::hvalue, false, 0.0, 800000.0, 1000.0},
    {Attribute::hyears, false, 1.0, 30.0, 1.0},
    {Attribute::loan, false, 0.0, 500000.0, 1000.0},
}};

constexpr std::array<Attribute, 7> kIndependent = {
    Attribute::salary, Attribute::age,   Attribute::elevel, Attribute::car,
    Attribute::zipcode, Attribute::hyears, Attribute::loan,
};

constexpr std::array<std::string_view, kAttributeCount> kNames = {
    "salary", "commission", "age", "elevel", "car",
    "zipcode", "hvalue", "hyears", "loan",
};

int band_by_age(int age, double v, double lo_young, double hi_young,
                double lo_mid, double hi_mid, double lo_old, double hi_old) {
  if (age < 40) return lo_young <= v && v <= hi_young;
  if (age < 60) return lo_mid <= v && v <= hi_mid;
  return lo_old <= v && v <= hi_old;
}

}  // namespace

std::string_view attribute_name(Attribute a) {
  return kNames.at(static_cast<std::size_t>(a));
}

Attribute attribute_from_name(std::string_view name) {
  for (int i = 0; i < kAttributeCount; ++i) {
    if (kNames[static_cast<std::size_t>(i)] == name) return static_cast<Attribute>(i);
  }
  throw std::invalid_argument("unknown attribute name: " + std::string(name));
}

double Record::value(Attribute a) const {
  switch (a) {
    case Attribute::salary: return salary;
    case Attribute::commission: return commission;
    case Attribute::age: return age;
    case Attribute::elevel: return elevel;
    case Attribute::car: return car;
    case Attribute::zipcode: return zipcode;
    case Attribute::hvalue: return hvalue;
    case Attribute::hyears: return hyears;
    case Attribute::loan: return loan;
  }
  throw std::invalid_argument("bad attribute");
}

std::int64_t AttributeMeta::support_count() const {
  return static_cast<std::int64_t>(std::llround((hi - lo) / step)) + 1;
}

double AttributeMeta::grid_value(std::int64_t i) const {
  return lo + static_cast<double>(i) * step;
}

const AttributeMeta& attribute_meta(Attribute a) {
  return kMeta.at(static_cast<std::size_t>(a));
}

std::span<const Attribute> independent_attributes() { return kIndependent; }

ConceptId::ConceptId(int index) : index_(index) {
  if (index < 0 || index >= kConceptCount) {
    throw std::invalid_argument("concept index out of range: " + std::to_string(index));
  }
}

Record sample_record(Rng& rng, CommissionRule rule) {
  Record r;
  r.salary = 1000.0 * static_cast<double>(rng.uniform_int(20, 150));
  bool low = r.salary < 75000.0;
  bool zero = (rule == CommissionRule::zero_below_75k) ? low : !low;
  r.commission = zero ? 0.0 : 1000.0 * static_cast<double>(rng.uniform_int(10, 75));
  r.age = static_cast<int>(rng.uniform_int(20, 80));
  r.elevel = static_cast<int>(rng.uniform_int(0, 4));
  r.car = static_cast<int>(rng.uniform_int(1, 20));
  r.zipcode = static_cast<int>(rng.uniform_int(0, 8));
  r.hvalue = 1000.0 * static_cast<double>(rng.uniform_int(50 * r.zipcode, 100 * r.zipcode));
  r.hyears = static_cast<int>(rng.uniform_int(1, 30));
  r.loan = 1000.0 * static_cast<double>(rng.uniform_int(0, 500));
  return r;
}

int classify(const Record& r, ConceptId concept_id) {
  const double s = r.salary;
  const double c = r.commission;
  const int age = r.age;
  const int e = r.elevel;
  const double hv = r.hvalue;
  const int hy = r.hyears;
  const double l = r.loan;
  switch (concept_id.index()) {
    case 0:
      return age < 40 || age >= 60;
    case 1:
      return band_by_age(age, s, 50000, 100000, 75000, 125000, 25000, 75000);
    case 2:
      if (age < 40) return e == 0 || e == 1;
      if (age < 60) return e == 1 || e == 2 || e == 3;
      return e == 2 || e == 3 || e == 4;
    case 3:
      if (age < 40) {
        if (e == 0 || e == 1) return 25000 <= s && s <= 75000;
        return 50000 <= s && s <= 100000;
      }
      if (age < 60) {
        if (e == 1 || e == 2 || e == 3) return 50000 <= s && s <= 100000;
        return 75000 <= s && s <= 125000;
      }
      if (e == 2 || e == 3 || e == 4) return 50000 <= s && s <= 100000;
      return 25000 <= s && s <= 75000;
    case 4:
      if (age < 40) return 50000 <= s && s <= 100000 && 100000 <= l && l <= 300000;
      if (age < 60) return 75000 <= s && s <= 125000 && 200000 <= l && l <= 400000;
      return 25000 <= s && s <= 75000 && 300000 <= l && l <= 500000;
    case 5:
      return band_by_age(age, s + c, 50000, 100000, 75000, 125000, 25000, 75000);
    case 6:
      return 2.0 * (s + c) / 3.0 - l / 5.0 - 20000.0 > 0.0;
    case 7:
      return 2.0 * (s + c) / 3.0 - 5000.0 * e - 20000.0 > 0.0;
    case 8:
      return 2.0 * (s + c) / 3.0 - 5000.0 * e - l / 5.0 - 10000.0 > 0.0;
    case 9: {
      double equity = hy >= 20 ? hv * (hy - 20.0) / 10.0 : 0.0;
      return 2.0 * (s + c) / 3.0 - 5000.0 * e + equity / 5.0 - 10000.0 > 0.0;
    }
  }
  throw std::invalid_argument("bad concept");
}

namespace {

double shift_clamped(double v, double lo, double hi, double magnitude, Rng& rng) {
  double u = rng.uniform_real(-1.0, 1.0);
  double shifted = v + u * magnitude * (hi - lo) / 2.0;
  return std::clamp(shifted, lo, hi);
}

}  // namespace

Record perturb(const Record& r, double magnitude, Rng& rng) {
  if (!(magnitude >= 0.0 && magnitude <= 1.0)) {
    throw std::invalid_argument("perturbation magnitude must be in [0, 1]");
  }
  Record out = r;
  const auto& sal = attribute_meta(Attribute::salary);
  out.salary = shift_clamped(r.salary, sal.lo, sal.hi, magnitude, rng);
  if (r.commission > 0.0) {
    const auto& com = attribute_meta(Attribute::commission);
    out.commission = shift_clamped(r.commission, com.lo, com.hi, magnitude, rng);
  }
  const auto& agem = attribute_meta(Attribute::age);
  out.age = static_cast<int>(std::llround(
      shift_clamped(r.age, agem.lo, agem.hi, magnitude, rng)));
  if (r.zipcode > 0) {
    out.hvalue = shift_clamped(r.hvalue, 50000.0 * r.zipcode, 100000.0 * r.zipcode,
                               magnitude, rng);
  }
  const auto& hym = attribute_meta(Attribute::hyears);
  out.hyears = static_cast<int>(std::llround(
      shift_clamped(r.hyears, hym.lo, hym.hi, magnitude, rng)));
  const auto& loanm = attribute_meta(Attribute::loan);
  out.loan = shift_clamped(r.loan, loanm.lo, loanm.hi, magnitude, rng);
  return out;
}

}  // namespace subdrift
