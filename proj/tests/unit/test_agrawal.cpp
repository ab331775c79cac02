#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <fstream>
#include <sstream>

#include "subdrift/agrawal.hpp"

using namespace subdrift;

namespace {

Record base_record() {
  Record r;
  r.salary = 60000;
  r.commission = 0;
  r.age = 30;
  r.elevel = 2;
  r.car = 10;
  r.zipcode = 4;
  r.hvalue = 300000;
  r.hyears = 15;
  r.loan = 200000;
  return r;
}

}  // namespace

TEST_CASE("classify reproduces the committed oracle labels") {
  std::ifstream in(SUBDRIFT_FIXTURE_DIR "/agrawal_labels.txt");
  REQUIRE(in.good());
  std::string line;
  long checked = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    Record r;
    int concept_index, label;
    ss >> r.salary >> r.commission >> r.age >> r.elevel >> r.car >> r.zipcode >>
        r.hvalue >> r.hyears >> r.loan >> concept_index >> label;
    REQUIRE(!ss.fail());
    CHECK(classify(r, ConceptId(concept_index)) == label);
    ++checked;
  }
  CHECK(checked >= 4000);
}

TEST_CASE("concept 0 splits on the age bands") {
  Record r = base_record();
  r.age = 30;
  CHECK(classify(r, ConceptId(0)) == 1);
  r.age = 50;
  CHECK(classify(r, ConceptId(0)) == 0);
  r.age = 60;
  CHECK(classify(r, ConceptId(0)) == 1);
}

TEST_CASE("concept ids outside 0..9 are rejected") {
  CHECK_THROWS_AS(ConceptId(-1), std::invalid_argument);
  CHECK_THROWS_AS(ConceptId(10), std::invalid_argument);
}

TEST_CASE("sampled records respect the attribute grid and support") {
  Rng rng(11);
  for (int i = 0; i < 20000; ++i) {
    Record r = sample_record(rng);
    CHECK(r.salary >= 20000);
    CHECK(r.salary <= 150000);
    CHECK(std::fmod(r.salary, 1000.0) == 0.0);
    CHECK(r.age >= 20);
    CHECK(r.age <= 80);
    CHECK(r.elevel >= 0);
    CHECK(r.elevel <= 4);
    CHECK(r.car >= 1);
    CHECK(r.car <= 20);
    CHECK(r.zipcode >= 0);
    CHECK(r.zipcode <= 8);
    CHECK(r.hvalue >= 50000.0 * r.zipcode);
    CHECK(r.hvalue <= 100000.0 * r.zipcode);
    CHECK(r.hyears >= 1);
    CHECK(r.hyears <= 30);
    CHECK(r.loan >= 0);
    CHECK(r.loan <= 500000);
    if (r.salary < 75000) {
      CHECK(r.commission == 0.0);
    } else {
      CHECK(r.commission >= 10000);
      CHECK(r.commission <= 75000);
    }
  }
}

TEST_CASE("the original commission rule inverts the zero side") {
  Rng rng(12);
  for (int i = 0; i < 2000; ++i) {
    Record r = sample_record(rng, CommissionRule::zero_at_or_above_75k);
    if (r.salary >= 75000) {
      CHECK(r.commission == 0.0);
    } else {
      CHECK(r.commission >= 10000);
    }
  }
}

TEST_CASE("attribute marginals are near uniform") {
  Rng rng(13);
  const int n = 100000;
  double age_sum = 0, salary_sum = 0, loan_sum = 0;
  for (int i = 0; i < n; ++i) {
    Record r = sample_record(rng);
    age_sum += r.age;
    salary_sum += r.salary;
    loan_sum += r.loan;
  }
  CHECK(age_sum / n == doctest::Approx(50.0).epsilon(0.01));
  CHECK(salary_sum / n == doctest::Approx(85000.0).epsilon(0.01));
  CHECK(loan_sum / n == doctest::Approx(250000.0).epsilon(0.01));
}

TEST_CASE("sampling is deterministic per seed") {
  Rng a(77), b(77);
  for (int i = 0; i < 100; ++i) {
    Record ra = sample_record(a), rb = sample_record(b);
    CHECK(ra.salary == rb.salary);
    CHECK(ra.age == rb.age);
    CHECK(ra.hvalue == rb.hvalue);
    CHECK(ra.loan == rb.loan);
  }
}

TEST_CASE("perturb at magnitude zero is the identity") {
  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    Record r = sample_record(rng);
    Record p = perturb(r, 0.0, rng);
    CHECK(p.salary == r.salary);
    CHECK(p.commission == r.commission);
    CHECK(p.age == r.age);
    CHECK(p.hvalue == r.hvalue);
    CHECK(p.hyears == r.hyears);
    CHECK(p.loan == r.loan);
  }
}

TEST_CASE("perturb consumes the same draws at any magnitude") {
  Rng a(31), b(31);
  for (int i = 0; i < 200; ++i) {
    Record ra = sample_record(a);
    Record rb = sample_record(b);
    perturb(ra, 0.0, a);
    perturb(rb, 0.7, b);
    CHECK(a.next_u64() == b.next_u64());
    // Keep the two streams aligned after the comparison draw.
  }
}

TEST_CASE("perturb leaves categoricals and support invariants intact") {
  Rng rng(22);
  double total_shift = 0;
  long n_commission = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    Record r = sample_record(rng);
    Record p = perturb(r, 0.25, rng);
    CHECK(p.elevel == r.elevel);
    CHECK(p.car == r.car);
    CHECK(p.zipcode == r.zipcode);
    CHECK(p.salary >= 20000);
    CHECK(p.salary <= 150000);
    CHECK(p.age >= 20);
    CHECK(p.age <= 80);
    CHECK(p.hyears >= 1);
    CHECK(p.hyears <= 30);
    CHECK(p.loan >= 0);
    CHECK(p.loan <= 500000);
    CHECK(p.hvalue >= 50000.0 * r.zipcode);
    CHECK(p.hvalue <= 100000.0 * r.zipcode);
    if (r.commission == 0.0) {
      CHECK(p.commission == 0.0);
    } else {
      CHECK(p.commission >= 10000);
      CHECK(p.commission <= 75000);
      ++n_commission;
    }
    total_shift += std::abs(p.salary - r.salary);
  }
  CHECK(n_commission > 0);
  // Mean |shift| for salary at 25%: half-range 16250 halved by the uniform,
  // minus clamping losses near the edges.
  double mean_shift = total_shift / n;
  CHECK(mean_shift > 7000.0);
  CHECK(mean_shift < 8600.0);
}

TEST_CASE("perturbation magnitude is validated") {
  Rng rng(23);
  Record r = base_record();
  CHECK_THROWS_AS(perturb(r, -0.1, rng), std::invalid_argument);
  CHECK_THROWS_AS(perturb(r, 1.5, rng), std::invalid_argument);
}

TEST_CASE("attribute metadata matches the generator grid") {
  CHECK(attribute_meta(Attribute::salary).support_count() == 131);
  CHECK(attribute_meta(Attribute::age).support_count() == 61);
  CHECK(attribute_meta(Attribute::elevel).support_count() == 5);
  CHECK(attribute_meta(Attribute::car).support_count() == 20);
  CHECK(attribute_meta(Attribute::zipcode).support_count() == 9);
  CHECK(attribute_meta(Attribute::hyears).support_count() == 30);
  CHECK(attribute_meta(Attribute::loan).support_count() == 501);
  CHECK(independent_attributes().size() == 7);
  CHECK(attribute_from_name("salary") == Attribute::salary);
  CHECK_THROWS_AS(attribute_from_name("wages"), std::invalid_argument);
}
