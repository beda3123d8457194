#include "epistral/governance.hpp"

#include <algorithm>

#include "epistral/error.hpp"

namespace epistral {

std::vector<WitnessScore> elect_witnesses(const WitnessApprovals& approvals,
                                          const std::map<std::string, TokenAmount>& stake, std::int64_t seats) {
  if (seats < 1) throw Error(Errc::InvalidParameter, "witness count must be >= 1");
  std::map<std::string, TokenAmount> scores;
  for (const auto& [voter, approved] : approvals) {
    auto it = stake.find(voter);
    const TokenAmount weight = it == stake.end() ? TokenAmount{} : it->second;
    for (const auto& candidate : approved) scores[candidate] += weight;
  }
  std::vector<WitnessScore> ranked;
  ranked.reserve(scores.size());
  for (const auto& [candidate, score] : scores) ranked.push_back({candidate, score});
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const WitnessScore& a, const WitnessScore& b) { return a.score > b.score; });
  if (ranked.size() > static_cast<std::size_t>(seats)) ranked.resize(static_cast<std::size_t>(seats));
  return ranked;
}

std::vector<WitnessScore> elect_witnesses(const LedgerState& state, const WitnessApprovals& approvals,
                                          std::int64_t seats) {
  std::map<std::string, TokenAmount> stake;
  for (const auto& [voter, approved] : approvals) {
    stake[voter] = state.account(voter).ep;
    for (const auto& c : approved)
      if (!state.has_account(c)) throw Error(Errc::UnknownAccount, c);
  }
  return elect_witnesses(approvals, stake, seats);
}

std::int64_t submit_proposal(LedgerState& state, const std::string& parameter, double new_value, Tick deadline) {
  if (!is_governable(parameter)) throw Error(Errc::InvalidParameter, parameter);
  if (auto bad = check_parameter(parameter, new_value)) throw ValidationError(parameter, *bad);
  for (const auto& [_, p] : state.governance.proposals)
    if (!p.closed && p.parameter == parameter)
      throw Error(Errc::ProposalConflict, "proposal " + std::to_string(p.id) + " already open for " + parameter);
  Proposal p;
  p.id = state.governance.next_id++;
  p.parameter = parameter;
  p.new_value = new_value;
  p.deadline = deadline;
  const auto id = p.id;
  state.governance.proposals.emplace(id, std::move(p));
  return id;
}

void vote_proposal(LedgerState& state, const std::string& voter, std::int64_t proposal_id, Vote vote, Tick tick) {
  auto it = state.governance.proposals.find(proposal_id);
  if (it == state.governance.proposals.end()) throw Error(Errc::UnknownProposal, std::to_string(proposal_id));
  Proposal& p = it->second;
  if (p.closed || tick > p.deadline) throw Error(Errc::ProposalClosed, std::to_string(proposal_id));
  if (state.account(voter).ep.is_zero()) throw Error(Errc::NoStake, voter);
  p.votes[voter] = vote;
}

bool passes(TokenAmount yes_stake, TokenAmount total_stake, double threshold) {
  if (total_stake.micro_units() <= 0) return false;
  const long double ratio =
      static_cast<long double>(yes_stake.micro_units()) / static_cast<long double>(total_stake.micro_units());
  return ratio > static_cast<long double>(threshold);
}

std::vector<EnactedChange> enact_due(LedgerState& state, Tick tick) {
  std::vector<EnactedChange> changes;
  const TokenAmount total = total_staked(state);
  const double threshold = state.params.proposal_threshold;
  ProtocolParams next = state.params;
  for (auto& [id, p] : state.governance.proposals) {
    if (p.closed || p.deadline >= tick) continue;
    p.yes_stake = {};
    p.no_stake = {};
    for (const auto& [voter, v] : p.votes) {
      const TokenAmount ep = state.account(voter).ep;
      (v == Vote::Yes ? p.yes_stake : p.no_stake) += ep;
    }
    p.closed = true;
    p.enacted = passes(p.yes_stake, total, threshold);
    if (p.enacted) {
      changes.push_back({id, p.parameter, get_parameter(next, p.parameter), p.new_value});
      set_parameter(next, p.parameter, p.new_value);
    }
  }
  next.validate();
  state.params = next;
  return changes;
}

}  // namespace epistral
