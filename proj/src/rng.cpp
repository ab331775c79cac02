#include "subdrift/rng.hpp"

#include <limits>
#include <stdexcept>

namespace subdrift {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng Rng::derive(std::uint64_t master, std::uint64_t domain, std::uint64_t id) {
  std::uint64_t state = master;
  state = splitmix64(state) ^ domain;
  state = splitmix64(state) ^ id;
  return Rng(splitmix64(state));
}

double Rng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("uniform_int: lo > hi");
  std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  if (range == std::numeric_limits<std::uint64_t>::max()) return static_cast<std::int64_t>(next_u64());
  std::uint64_t bound = range + 1;
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % bound + 1) % bound;
  std::uint64_t draw;
  do {
    draw = next_u64();
  } while (draw > limit);
  return lo + static_cast<std::int64_t>(draw % bound);
}

double Rng::uniform_real(double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("uniform_real: lo > hi");
  return lo + (hi - lo) * uniform01();
}

}  // namespace subdrift
