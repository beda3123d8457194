#pragma once

#include <cstdint>
#include <string_view>

namespace epistral {

// Counter-based random stream. Output n is a keyed hash of (key, n), so a
// stream is fully determined by its key and never depends on how many
// other streams exist or in which order they are consumed.
class CounterStream {
 public:
  explicit CounterStream(std::uint64_t key) : key_(key) {}

  // Stream for one agent during one tick.
  static CounterStream for_agent(std::uint64_t seed, std::string_view agent_id, std::int64_t tick);

  std::uint64_t next_u64();
  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  bool bernoulli(double p) { return uniform() < p; }
  // Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);
  // Standard normal via Box-Muller (no cached second value).
  double normal();
  // floor(rate) plus one more with probability frac(rate).
  std::int64_t count(double rate);

  std::uint64_t key() const { return key_; }
  std::uint64_t position() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t x);

}  // namespace epistral
