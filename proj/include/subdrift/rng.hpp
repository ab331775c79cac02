#pragma once

#include <cstdint>
#include <random>

namespace subdrift {

// Deterministic across platforms: std::uniform_int_distribution and friends
// are implementation-defined, so bounded draws are done by hand here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent child stream; (domain, id) pairs must be unique per use site.
  static Rng derive(std::uint64_t master, std::uint64_t domain, std::uint64_t id);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01();

  // Uniform integer in [lo, hi], inclusive. Unbiased via rejection.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  // Uniform double in [lo, hi).
  double uniform_real(double lo, double hi);

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace subdrift
