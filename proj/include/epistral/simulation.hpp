#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "epistral/content_lifecycle.hpp"
#include "epistral/governance.hpp"
#include "epistral/metrics.hpp"
#include "epistral/recommender.hpp"
#include "epistral/rng.hpp"
#include "epistral/scenario.hpp"
#include "epistral/state_hash.hpp"
#include "epistral/token_economy.hpp"

namespace epistral {

struct AgentRecord {
  std::string id;
  std::size_t spec = 0;  // index into ScenarioConfig::agents
};

struct TickView {
  Tick tick = 0;
  const CandidatePool& pool;
  const std::vector<Feed>& feeds;
  const SettlementReport& settlement;
  const LedgerState& state;
};

struct RunTrace {
  std::vector<MetricRecord> records;
  std::vector<std::vector<std::string>> witnesses;  // elected set per tick
  LedgerState final_state;
  Digest final_hash{};
};

// Deterministic tick loop. Each tick runs, in order: enact due proposals;
// agents act in id order; feeds for consumers and curators; feed
// engagements; mint; settle closing content; record metrics.
class Simulation {
 public:
  explicit Simulation(ScenarioConfig config);

  // Observer invoked at the end of every tick with that tick's feeds.
  void on_tick(std::function<void(const TickView&)> observer) { observer_ = std::move(observer); }

  RunTrace run();

  const LedgerState& state() const { return state_; }
  const std::vector<AgentRecord>& agents() const { return agents_; }

 private:
  void setup();
  void act(const AgentRecord& agent, CounterStream& rng, Tick tick);
  void publish_for(const AgentRecord& agent, CounterStream& rng, Tick tick);
  void bot_votes(const AgentRecord& agent, CounterStream& rng, Tick tick);
  void capital_op(const AgentRecord& agent, CounterStream& rng);
  void vote_on_new_proposals(const std::vector<std::int64_t>& opened, Tick tick);
  MetricRecord record(Tick tick, const std::vector<Feed>& feeds, const SettlementReport& report,
                      TokenAmount minted) const;

  ScenarioConfig config_;
  LedgerState state_;
  std::vector<AgentRecord> agents_;
  std::vector<std::string> account_ids_;
  WitnessApprovals approvals_;
  std::map<std::size_t, std::vector<ContentId>> farm_items_;  // bot_farm spec -> its content
  EpochTxHistogram hist_;
  std::function<void(const TickView&)> observer_;
};

RunTrace run_scenario(const ScenarioConfig& config);

}  // namespace epistral
