#include "epistral/rng.hpp"

#include <cmath>
#include <numbers>

namespace epistral {

std::uint64_t mix64(std::uint64_t x) {
  // SplitMix64 finalizer.
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

CounterStream CounterStream::for_agent(std::uint64_t seed, std::string_view agent_id, std::int64_t tick) {
  std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a
  for (unsigned char c : agent_id) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  std::uint64_t key = mix64(seed);
  key = mix64(key ^ h);
  key = mix64(key ^ static_cast<std::uint64_t>(tick));
  return CounterStream(key);
}

std::uint64_t CounterStream::next_u64() {
  const std::uint64_t n = counter_++;
  return mix64(mix64(key_ ^ mix64(n)) + n);
}

double CounterStream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::uint64_t CounterStream::below(std::uint64_t n) {
  // Rejection sampling keeps the result unbiased.
  const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % n);
  std::uint64_t v;
  do v = next_u64();
  while (v >= limit);
  return v % n;
}

double CounterStream::normal() {
  double u1 = uniform();
  const double u2 = uniform();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::int64_t CounterStream::count(double rate) {
  if (!(rate > 0.0)) return 0;
  const double whole = std::floor(rate);
  return static_cast<std::int64_t>(whole) + (bernoulli(rate - whole) ? 1 : 0);
}

}  // namespace epistral
