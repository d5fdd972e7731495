#pragma once

#include <cstdint>
#include <random>

namespace chronicle::sched {

// Portable seeded generator.
//
// The engine is std::mt19937_64, seeded through std::seed_seq with the words
// {seed_lo, seed_hi, stream_lo, stream_hi}. Both are fully specified by the
// standard, so a (seed, stream) pair yields the same bits on every conforming
// implementation. The standard distributions are not portable, so the
// conversions below are done by hand:
//   uniform01()      = (next() >> 11) * 2^-53, in [0, 1)
//   uniform_int(n)   = rejection sampling on next() to remove modulo bias
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next() { return engine_(); }
  double uniform01();
  // Value in [lo, hi); requires lo < hi.
  double uniform(double lo, double hi);
  // Value in [0, n); requires n > 0.
  std::uint64_t uniform_int(std::uint64_t n);
  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

// Stream ids used by sessions so that data generation and latency sampling
// draw from independent sequences of the same seed.
inline constexpr std::uint64_t kDataStream = 1;
inline constexpr std::uint64_t kLatencyStream = 2;

}  // namespace chronicle::sched
