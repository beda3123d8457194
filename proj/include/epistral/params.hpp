#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "epistral/token_amount.hpp"

namespace epistral {

enum class EngagementKind : std::uint8_t { View = 0, Like = 1, Comment = 2, Share = 3 };
inline constexpr std::size_t kEngagementKinds = 4;

std::string_view kind_name(EngagementKind kind);
std::optional<EngagementKind> parse_kind(std::string_view name);

struct ProtocolParams {
  std::int64_t lifespan_ticks = 15;
  std::int64_t feed_size = 20;
  double cap_frac = 0.2;
  double target_entropy = 2.0;  // bits
  double lambda = 0.5;
  TokenAmount base_mint = TokenAmount::tokens(1000);
  double decay = 0.99;
  double creator_split = 0.75;
  double debt_ratio_cap = 0.10;
  double tau = 0.8;
  double rep_alpha = 0.01;
  std::int64_t witness_count = 5;
  double proposal_threshold = 0.5;
  // Engagement weight multipliers indexed by EngagementKind.
  std::array<double, kEngagementKinds> kind_factors{0.1, 1.0, 2.0, 3.0};

  double kind_factor(EngagementKind kind) const { return kind_factors[static_cast<std::size_t>(kind)]; }

  // ceil(cap_frac * feed_size): the most items one cluster may hold in a feed.
  std::int64_t cluster_cap() const;

  // Throws ValidationError naming the first out-of-range field.
  void validate() const;

  friend bool operator==(const ProtocolParams&, const ProtocolParams&) = default;
};

// Names of the parameters that governance proposals may change.
std::span<const std::string_view> governable_parameters();

bool is_governable(std::string_view name);

// Empty when `value` is legal for `name`, otherwise the violated constraint.
std::optional<std::string> check_parameter(std::string_view name, double value);

// Value lookup/update by governable name. Integer parameters take the
// value rounded to nearest; token parameters are given in whole tokens.
double get_parameter(const ProtocolParams& params, std::string_view name);
void set_parameter(ProtocolParams& params, std::string_view name, double value);

}  // namespace epistral
