#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "epistral/params.hpp"
#include "epistral/token_amount.hpp"

namespace epistral {

enum class Archetype { Creator, Consumer, Curator, BotFarm, CapitalOnly };

std::string_view archetype_name(Archetype a);

struct AgentSpec {
  Archetype archetype = Archetype::Consumer;
  std::string name;  // id prefix; defaults to the archetype name
  std::int64_t count = 0;
  TokenAmount initial_ept;
  TokenAmount initial_ep;
  double posts_per_tick = 0.0;   // creator, bot_farm
  double engagement_rate = 0.0;  // consumer, curator: chance per feed item
  double votes_per_tick = 0.0;   // bot_farm: engagements on its own cluster
  double ops_per_tick = 0.0;     // capital_only: capital operations
  std::optional<std::string> target_cluster;
  std::optional<std::vector<double>> embedding_center;
  double embedding_spread = 0.05;
  std::array<double, kEngagementKinds> kind_mix{1.0, 0.0, 0.0, 0.0};
  double vote_bias = 0.5;  // chance of a yes vote on each proposal
  bool witness_candidate = false;
};

struct InitialAccount {
  std::string id;
  TokenAmount ept;
  TokenAmount ep;
};

struct ScheduledProposal {
  std::int64_t tick = 0;
  std::string parameter;
  double value = 0.0;
  std::int64_t voting_period = 1;  // deadline = tick + voting_period
};

struct ScenarioConfig {
  std::string name;
  std::uint64_t seed = 0;
  std::int64_t ticks = 0;
  std::int64_t embedding_dim = 16;
  ProtocolParams params;
  std::vector<AgentSpec> agents;
  std::vector<double> price_path{1.0};
  std::vector<InitialAccount> initial_accounts;
  std::vector<ScheduledProposal> proposals;

  // EPD price in EPT at `tick`; the last entry holds afterwards.
  double price_at(std::int64_t tick) const;
};

// Reads and validates a scenario file. Throws Error(ParseError) with the
// line and column, or ValidationError naming the field.
ScenarioConfig load_scenario(const std::string& path);
ScenarioConfig parse_scenario(const std::string& text);

void validate(const ScenarioConfig& config);

// Divides agent counts by `factor` (rounded, at least one when nonzero).
void apply_scale(ScenarioConfig& config, double factor);

}  // namespace epistral
