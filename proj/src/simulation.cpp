#include "epistral/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "epistral/error.hpp"
#include "epistral/rng.hpp"

namespace epistral {

namespace {

std::string agent_id(const std::string& name, std::int64_t n) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%06lld", static_cast<long long>(n));
  return name + "-" + buf;
}

EngagementKind draw_kind(CounterStream& rng, const std::array<double, kEngagementKinds>& mix) {
  double total = 0.0;
  for (double m : mix) total += m;
  double u = rng.uniform() * total;
  for (std::size_t k = 0; k < kEngagementKinds; ++k) {
    if (mix[k] <= 0.0) continue;
    if (u < mix[k]) return static_cast<EngagementKind>(k);
    u -= mix[k];
  }
  for (std::size_t k = kEngagementKinds; k-- > 0;)
    if (mix[k] > 0.0) return static_cast<EngagementKind>(k);
  return EngagementKind::View;
}

TokenAmount fraction(TokenAmount amount, double u) {
  return TokenAmount::micro(static_cast<std::int64_t>(std::floor(static_cast<long double>(amount.micro_units()) * u)));
}

bool reads_feed(Archetype a) { return a == Archetype::Consumer || a == Archetype::Curator; }

}  // namespace

Simulation::Simulation(ScenarioConfig config) : config_(std::move(config)) {
  validate(config_);
  setup();
}

void Simulation::setup() {
  state_.params = config_.params;
  state_.debt.price = config_.price_at(0);
  for (const auto& acct : config_.initial_accounts) create_account(state_, acct.id, acct.ept, acct.ep);
  for (std::size_t s = 0; s < config_.agents.size(); ++s) {
    const auto& spec = config_.agents[s];
    for (std::int64_t n = 0; n < spec.count; ++n) {
      AgentRecord rec{agent_id(spec.name, n), s};
      create_account(state_, rec.id, spec.initial_ept, spec.initial_ep);
      agents_.push_back(std::move(rec));
    }
  }
  std::sort(agents_.begin(), agents_.end(), [](const AgentRecord& a, const AgentRecord& b) { return a.id < b.id; });
  for (const auto& [id, _] : state_.accounts) account_ids_.push_back(id);

  std::vector<std::string> candidates;
  for (const auto& a : agents_)
    if (config_.agents[a.spec].witness_candidate) candidates.push_back(a.id);
  if (candidates.empty()) return;
  for (const auto& a : agents_) {
    if (config_.agents[a.spec].witness_candidate) {
      approvals_[a.id].insert(a.id);
    } else if (!state_.account(a.id).ep.is_zero()) {
      auto rng = CounterStream::for_agent(config_.seed, a.id, -1);
      approvals_[a.id].insert(candidates[rng.below(candidates.size())]);
    }
  }
}

void Simulation::publish_for(const AgentRecord& agent, CounterStream& rng, Tick tick) {
  const auto& spec = config_.agents[agent.spec];
  const std::int64_t posts = rng.count(spec.posts_per_tick);
  for (std::int64_t i = 0; i < posts; ++i) {
    ContentPlacement placement;
    if (spec.target_cluster) {
      placement = *spec.target_cluster;
    } else {
      std::vector<double> v(static_cast<std::size_t>(config_.embedding_dim));
      for (std::size_t d = 0; d < v.size(); ++d) {
        const double noise = rng.normal();
        v[d] = spec.embedding_center ? (*spec.embedding_center)[d] + spec.embedding_spread * noise : noise;
      }
      placement = Embedding(std::move(v));
    }
    const ContentId id = publish(state_, agent.id, std::move(placement), tick);
    hist_.record(TxKind::Publish);
    if (spec.archetype == Archetype::BotFarm) farm_items_[agent.spec].push_back(id);
  }
}

void Simulation::bot_votes(const AgentRecord& agent, CounterStream& rng, Tick tick) {
  const auto& spec = config_.agents[agent.spec];
  const std::int64_t votes = rng.count(spec.votes_per_tick);
  auto& items = farm_items_[agent.spec];
  for (std::int64_t v = 0; v < votes; ++v) {
    // Drop closed items as they are drawn.
    while (!items.empty()) {
      const std::size_t k = rng.below(items.size());
      const ContentItem* item = state_.content.find(items[k]);
      if (!item || item->expires_at < tick) {
        items[k] = items.back();
        items.pop_back();
        continue;
      }
      const EngagementKind kind = draw_kind(rng, spec.kind_mix);
      const bool already = std::any_of(item->engagements.begin(), item->engagements.end(),
                                       [&](const Engagement& g) { return g.voter == agent.id && g.kind == kind; });
      if (!already) {
        engage(state_, agent.id, item->id, kind, tick);
        hist_.record(TxKind::Engage);
      }
      break;
    }
  }
}

void Simulation::capital_op(const AgentRecord& agent, CounterStream& rng) {
  const Account& acct = state_.account(agent.id);
  const std::uint64_t op = rng.below(5);
  const double u = rng.uniform();
  switch (op) {
    case 0: {
      const TokenAmount amount = fraction(acct.ept, u);
      std::string to = account_ids_[rng.below(account_ids_.size())];
      if (amount.is_zero() || to == agent.id) return;
      transfer(state_, agent.id, to, amount);
      hist_.record(TxKind::Transfer);
      return;
    }
    case 1: {
      const TokenAmount amount = fraction(acct.ept, u);
      if (amount.is_zero()) return;
      stake(state_, agent.id, amount);
      hist_.record(TxKind::Stake);
      return;
    }
    case 2: {
      const TokenAmount amount = fraction(acct.ep, u);
      if (amount.is_zero()) return;
      unstake(state_, agent.id, amount);
      hist_.record(TxKind::Stake);
      return;
    }
    case 3: {
      const TokenAmount amount = std::min(fraction(acct.ept, u), debt_headroom(state_));
      if (amount.is_zero()) return;
      convert_to_debt(state_, agent.id, amount);
      hist_.record(TxKind::Transfer);
      return;
    }
    default: {
      const TokenAmount amount = fraction(acct.epd, u);
      if (amount.is_zero()) return;
      convert_from_debt(state_, agent.id, amount);
      hist_.record(TxKind::Transfer);
      return;
    }
  }
}

void Simulation::act(const AgentRecord& agent, CounterStream& rng, Tick tick) {
  const auto& spec = config_.agents[agent.spec];
  switch (spec.archetype) {
    case Archetype::Creator:
      publish_for(agent, rng, tick);
      break;
    case Archetype::BotFarm:
      publish_for(agent, rng, tick);
      bot_votes(agent, rng, tick);
      break;
    case Archetype::CapitalOnly:
      for (std::int64_t n = rng.count(spec.ops_per_tick); n > 0; --n) capital_op(agent, rng);
      break;
    case Archetype::Consumer:
    case Archetype::Curator:
      break;
  }
}

MetricRecord Simulation::record(Tick tick, const std::vector<Feed>& feeds, const SettlementReport& report,
                                TokenAmount minted) const {
  MetricRecord r;
  r.tick = tick;
  double entropy_sum = 0.0;
  for (const auto& f : feeds) {
    entropy_sum += f.achieved_entropy;
    if (f.items.empty()) continue;
    std::int64_t top = 0;
    for (const auto& [_, n] : f.per_cluster_counts) top = std::max(top, n);
    r.max_cluster_feed_share =
        std::max(r.max_cluster_feed_share, static_cast<double>(top) / static_cast<double>(f.items.size()));
  }
  if (!feeds.empty()) r.mean_feed_entropy = entropy_sum / static_cast<double>(feeds.size());
  std::vector<double> payouts;
  for (const auto& [_, amount] : report.payouts) payouts.push_back(static_cast<double>(amount.micro_units()));
  r.payout_gini = gini(payouts);
  std::vector<double> holdings;
  for (const auto& [_, a] : state_.accounts) {
    const auto h = (a.ept + a.ep).micro_units();
    if (h > 0) holdings.push_back(static_cast<double>(h));
  }
  if (holdings.size() >= kMinZipfPoints) r.holdings_zipf_exponent = zipf_exponent(holdings);
  r.minted = minted;
  r.total_supply = ept_in_existence(state_);
  r.debt_ratio = debt_ratio(state_);
  return r;
}

RunTrace Simulation::run() {
  RunTrace trace;
  for (Tick t = 0; t < config_.ticks; ++t) {
    state_.epoch = t;
    state_.debt.price = config_.price_at(t);
    hist_ = {};

    enact_due(state_, t);

    std::vector<std::int64_t> opened;
    for (const auto& p : config_.proposals)
      if (p.tick == t) opened.push_back(submit_proposal(state_, p.parameter, p.value, t + p.voting_period));

    std::vector<CounterStream> streams;
    streams.reserve(agents_.size());
    for (const auto& agent : agents_) {
      streams.push_back(CounterStream::for_agent(config_.seed, agent.id, t));
      auto& rng = streams.back();
      const auto& spec = config_.agents[agent.spec];
      for (auto id : opened) {
        if (state_.account(agent.id).ep.is_zero()) break;
        vote_proposal(state_, agent.id, id, rng.bernoulli(spec.vote_bias) ? Vote::Yes : Vote::No, t);
      }
      act(agent, rng, t);
    }

    std::vector<std::size_t> readers;
    std::vector<FeedRequest> requests;
    for (std::size_t i = 0; i < agents_.size(); ++i) {
      if (!reads_feed(config_.agents[agents_[i].spec].archetype)) continue;
      readers.push_back(i);
      requests.push_back(feed_request(state_.content, agents_[i].id));
    }
    const CandidatePool pool = make_pool(state_.content, t);
    const std::vector<Feed> feeds = build_feeds(pool, requests, state_.params);

    for (std::size_t r = 0; r < readers.size(); ++r) {
      const auto& agent = agents_[readers[r]];
      const auto& spec = config_.agents[agent.spec];
      auto& rng = streams[readers[r]];
      for (ContentId id : feeds[r].items) {
        if (!rng.bernoulli(spec.engagement_rate)) continue;
        engage(state_, agent.id, id, draw_kind(rng, spec.kind_mix), t);
        hist_.record(TxKind::Engage);
      }
    }

    const TokenAmount minted = mint_epoch(t, diversity_factor(state_.content), balance_factor(hist_), state_.params);
    credit_mint(state_, minted);
    const SettlementReport report = settle_epoch(state_, t, state_.escrow);

    std::vector<std::string> elected;
    for (const auto& w : elect_witnesses(state_, approvals_, state_.params.witness_count)) elected.push_back(w.candidate);
    trace.witnesses.push_back(std::move(elected));
    trace.records.push_back(record(t, feeds, report, minted));
    if (observer_) observer_(TickView{t, pool, feeds, report, state_});
  }
  state_.epoch = config_.ticks;
  trace.final_state = state_;
  trace.final_hash = state_hash(state_);
  return trace;
}

RunTrace run_scenario(const ScenarioConfig& config) {
  Simulation sim(config);
  return sim.run();
}

}  // namespace epistral
