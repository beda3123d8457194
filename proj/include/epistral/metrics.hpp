#pragma once

#include <optional>
#include <span>

#include "epistral/content_types.hpp"
#include "epistral/token_amount.hpp"

namespace epistral {

struct MetricRecord {
  Tick tick = 0;
  double mean_feed_entropy = 0.0;
  double payout_gini = 0.0;
  std::optional<double> holdings_zipf_exponent;  // needs >= 10 positive holdings
  double max_cluster_feed_share = 0.0;
  TokenAmount minted;
  TokenAmount total_supply;
  double debt_ratio = 0.0;

  friend bool operator==(const MetricRecord&, const MetricRecord&) = default;
};

// Mean absolute difference over twice the mean, via the sorted O(n log n)
// form. Empty or all-zero input gives 0.
double gini(std::span<const double> values);

inline constexpr std::size_t kMinZipfPoints = 10;

// Negated least-squares slope of log2(frequency) against log2(rank) after
// sorting descending. Throws TooFewPoints below kMinZipfPoints values and
// InvalidParameter on non-positive values.
double zipf_exponent(std::span<const double> frequencies);

}  // namespace epistral
