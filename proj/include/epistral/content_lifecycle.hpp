#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "epistral/ledger.hpp"

namespace epistral {

// What a publish carries to place the item in semantic space.
using ContentPlacement = std::variant<Embedding, std::string>;

struct SettlementReport {
  Tick epoch = 0;
  std::map<std::string, TokenAmount> payouts;
  std::vector<ContentId> closed_content;
  TokenAmount pool;
  TokenAmount rollover;                 // left in escrow for the next epoch
  std::vector<std::string> boosted;     // voters whose reputation rose

  TokenAmount total_paid() const;
};

// Registers new content live through tick + lifespan_ticks inclusive.
ContentId publish(LedgerState& state, const std::string& author, ContentPlacement placement, Tick tick);

// Weight this engagement would carry: whole staked tokens x reputation x
// kind factor.
double engagement_weight(const Account& voter, EngagementKind kind, const ProtocolParams& params);

double engage(LedgerState& state, const std::string& voter, ContentId content, EngagementKind kind, Tick tick);

// Settles every live item whose window has closed before `tick`, paying
// `epoch_pool` out of escrow. Items share the pool in proportion to their
// weight; within an item the author takes creator_split and voters share
// the rest in proportion to their weight. A pool with no weighted claimant
// stays in escrow.
SettlementReport settle_epoch(LedgerState& state, Tick tick, TokenAmount epoch_pool);

// Splits `pool` exactly in proportion to integer `weights`; the leftover
// micro-units go one each to the largest fractional remainders (earlier
// index first on ties). Returns all zeros when the weights sum to zero.
std::vector<TokenAmount> proportional_split(TokenAmount pool, const std::vector<std::int64_t>& weights);

// Engagement weights are settled at micro resolution.
std::int64_t quantize_weight(double weight);

}  // namespace epistral
