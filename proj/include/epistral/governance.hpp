#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "epistral/ledger.hpp"

namespace epistral {

// voter -> approved witness candidates; each approval carries the voter's
// full EP.
using WitnessApprovals = std::map<std::string, std::set<std::string>>;

struct WitnessScore {
  std::string candidate;
  TokenAmount score;
};

// Top-W candidates by approving stake; ties go to the smaller account id.
std::vector<WitnessScore> elect_witnesses(const WitnessApprovals& approvals,
                                          const std::map<std::string, TokenAmount>& stake, std::int64_t seats);
// Uses current EP balances; throws UnknownAccount for dangling approvals.
std::vector<WitnessScore> elect_witnesses(const LedgerState& state, const WitnessApprovals& approvals,
                                          std::int64_t seats);

std::int64_t submit_proposal(LedgerState& state, const std::string& parameter, double new_value, Tick deadline);

void vote_proposal(LedgerState& state, const std::string& voter, std::int64_t proposal_id, Vote vote, Tick tick);

struct EnactedChange {
  std::int64_t proposal_id = 0;
  std::string parameter;
  double old_value = 0.0;
  double new_value = 0.0;
};

// True when yes / total staked EP strictly exceeds the threshold.
bool passes(TokenAmount yes_stake, TokenAmount total_stake, double threshold);

// Tallies every open proposal whose deadline is before `tick` using EP at
// tally time, then applies the passing ones to the params in one step.
std::vector<EnactedChange> enact_due(LedgerState& state, Tick tick);

}  // namespace epistral
