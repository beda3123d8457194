#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

namespace epistral {

// Fixed-point token quantity in micro-units (1 token = 1'000'000 micro).
// All money in the ledger is carried by this type; there is no
// floating-point money anywhere in the state.
class TokenAmount {
 public:
  static constexpr std::int64_t kMicroPerToken = 1'000'000;

  constexpr TokenAmount() = default;

  static constexpr TokenAmount micro(std::int64_t units) { return TokenAmount(units); }
  static constexpr TokenAmount tokens(std::int64_t whole) { return TokenAmount(whole * kMicroPerToken); }
  // Rounds to the nearest micro-unit.
  static TokenAmount from_tokens(double tokens);

  constexpr std::int64_t micro_units() const { return units_; }
  constexpr std::int64_t whole_tokens() const { return units_ / kMicroPerToken; }
  constexpr double as_tokens() const { return static_cast<double>(units_) / kMicroPerToken; }
  constexpr bool is_zero() const { return units_ == 0; }

  constexpr TokenAmount& operator+=(TokenAmount o) { units_ += o.units_; return *this; }
  constexpr TokenAmount& operator-=(TokenAmount o) { units_ -= o.units_; return *this; }
  friend constexpr TokenAmount operator+(TokenAmount a, TokenAmount b) { return a += b; }
  friend constexpr TokenAmount operator-(TokenAmount a, TokenAmount b) { return a -= b; }
  friend constexpr auto operator<=>(TokenAmount, TokenAmount) = default;

  // Decimal token string, e.g. "247.5" or "0.000001".
  std::string to_string() const;

 private:
  constexpr explicit TokenAmount(std::int64_t units) : units_(units) {}
  std::int64_t units_ = 0;
};

}  // namespace epistral
