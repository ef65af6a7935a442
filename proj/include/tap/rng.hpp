#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace tap {

// 64-bit finalizer (splitmix64) used to derive independent stream seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives the seed of one named stream from the scenario seed plus salt tags.
// Every stochastic component (arrivals, demands, exploration, service, delay)
// gets its own stream so schemes can be compared on identical arrival
// sequences (common random numbers).
inline std::uint64_t stream_seed(std::uint64_t base,
                                 std::initializer_list<std::uint64_t> tags) {
  std::uint64_t s = mix64(base);
  for (std::uint64_t t : tags) s = mix64(s ^ mix64(t));
  return s;
}

// Seedable uniform/exponential source backed by mt19937_64. Exponential draws
// use explicit inversion so the bit stream is stable across library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Exponential with the given rate (mean 1/rate). log1p(-u) with u in [0,1)
  // never evaluates log at zero.
  double exponential(double rate) {
    return -std::log1p(-uniform01()) / rate;
  }

  // Uniform integer in [0, n); n must be positive.
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(gen_() % n);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace tap
