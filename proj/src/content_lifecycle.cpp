#include "epistral/content_lifecycle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "epistral/error.hpp"
#include "epistral/recommender.hpp"

namespace epistral {

namespace {

__extension__ typedef __int128 i128;

void remove_item(ContentRegistry& reg, const ContentItem& item) {
  const ContentId id = item.id;
  auto& members = reg.members[item.cluster];
  auto pos = std::lower_bound(members.begin(), members.end(), item.id);
  if (pos != members.end() && *pos == item.id) members.erase(pos);
  if (members.empty()) reg.members.erase(item.cluster);
  for (const auto& g : item.engagements) {
    auto it = reg.engaged_by.find(g.voter);
    if (it == reg.engaged_by.end()) continue;
    it->second.erase(item.id);
    if (it->second.empty()) reg.engaged_by.erase(it);
  }
  reg.live.erase(id);
}

// Remainder goes to the first (lexicographically smallest) positive claimant.
void split_to_smallest(TokenAmount pool, const std::vector<std::pair<std::string, std::int64_t>>& claims,
                       std::map<std::string, TokenAmount>& payouts) {
  i128 total = 0;
  for (const auto& [_, w] : claims) total += w;
  if (total == 0) return;
  std::int64_t paid = 0;
  const std::string* first = nullptr;
  for (const auto& [id, w] : claims) {
    if (w <= 0) continue;
    if (!first) first = &id;
    const auto share = static_cast<std::int64_t>(static_cast<i128>(pool.micro_units()) * w / total);
    payouts[id] += TokenAmount::micro(share);
    paid += share;
  }
  payouts[*first] += TokenAmount::micro(pool.micro_units() - paid);
}

}  // namespace

TokenAmount SettlementReport::total_paid() const {
  TokenAmount sum;
  for (const auto& [_, v] : payouts) sum += v;
  return sum;
}

std::int64_t quantize_weight(double weight) {
  return weight <= 0.0 ? 0 : std::llround(static_cast<long double>(weight) * 1'000'000.0L);
}

std::vector<TokenAmount> proportional_split(TokenAmount pool, const std::vector<std::int64_t>& weights) {
  std::vector<TokenAmount> out(weights.size());
  i128 total = 0;
  for (auto w : weights) total += w;
  if (total <= 0) return out;
  const i128 p = pool.micro_units();
  std::vector<i128> remainders(weights.size(), 0);
  std::int64_t paid = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0) continue;
    const i128 num = p * weights[i];
    const auto share = static_cast<std::int64_t>(num / total);
    remainders[i] = num % total;
    out[i] = TokenAmount::micro(share);
    paid += share;
  }
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
  std::int64_t leftover = pool.micro_units() - paid;
  for (std::size_t k = 0; leftover > 0 && k < order.size(); ++k, --leftover)
    out[order[k]] += TokenAmount::micro(1);
  return out;
}

ContentId publish(LedgerState& state, const std::string& author, ContentPlacement placement, Tick tick) {
  if (!state.has_account(author)) throw Error(Errc::UnknownAccount, author);
  auto& reg = state.content;
  ContentItem item;
  item.id = reg.next_id;
  item.author = author;
  item.published_at = tick;
  item.expires_at = tick + state.params.lifespan_ticks;
  if (auto* label = std::get_if<std::string>(&placement)) {
    item.cluster = reg.clusters.assign_label(*label);
    item.label = *label;
  } else {
    item.embedding = std::get<Embedding>(std::move(placement));
    item.cluster = reg.clusters.assign(item.id, item.embedding, state.params.tau);
  }
  ++reg.next_id;
  reg.members[item.cluster].push_back(item.id);
  const ContentId id = item.id;
  reg.live.emplace(id, std::move(item));
  return id;
}

double engagement_weight(const Account& voter, EngagementKind kind, const ProtocolParams& params) {
  return static_cast<double>(voter.ep.whole_tokens()) * voter.reputation * params.kind_factor(kind);
}

double engage(LedgerState& state, const std::string& voter, ContentId content, EngagementKind kind, Tick tick) {
  auto& reg = state.content;
  auto it = reg.live.find(content);
  if (it == reg.live.end()) {
    if (content >= 0 && content < reg.next_id)
      throw Error(Errc::ExpiredContent, "content " + std::to_string(content) + " already settled");
    throw Error(Errc::UnknownContent, std::to_string(content));
  }
  ContentItem& item = it->second;
  if (tick < item.published_at || tick > item.expires_at)
    throw Error(Errc::ExpiredContent, "content " + std::to_string(content) + " is open for ticks [" +
                                          std::to_string(item.published_at) + ", " +
                                          std::to_string(item.expires_at) + "]");
  const Account& acct = state.account(voter);
  for (const auto& g : item.engagements)
    if (g.voter == voter && g.kind == kind)
      throw Error(Errc::DuplicateEngagement, voter + " already sent " + std::string(kind_name(kind)));
  const double w = engagement_weight(acct, kind, state.params);
  item.engagements.push_back({voter, kind, tick, w});
  item.total_weight += w;
  reg.engaged_by[voter].insert(content);
  return w;
}

SettlementReport settle_epoch(LedgerState& state, Tick tick, TokenAmount epoch_pool) {
  if (epoch_pool > state.escrow) throw Error(Errc::InsufficientBalance, "epoch pool exceeds escrow");
  SettlementReport report;
  report.epoch = tick;
  report.pool = epoch_pool;

  auto& reg = state.content;
  std::vector<const ContentItem*> closing;
  for (const auto& [id, item] : reg.live)
    if (item.expires_at < tick) closing.push_back(&item);

  // Per item, per voter quantized weights (voters in id order).
  std::vector<std::vector<std::pair<std::string, std::int64_t>>> claims(closing.size());
  std::vector<std::int64_t> item_weights(closing.size(), 0);
  for (std::size_t k = 0; k < closing.size(); ++k) {
    std::map<std::string, double> by_voter;
    for (const auto& g : closing[k]->engagements) by_voter[g.voter] += g.weight;
    for (const auto& [voter, w] : by_voter) {
      const std::int64_t q = quantize_weight(w);
      claims[k].emplace_back(voter, q);
      item_weights[k] += q;
    }
  }

  const auto item_pools = proportional_split(epoch_pool, item_weights);
  TokenAmount paid;
  for (std::size_t k = 0; k < closing.size(); ++k) {
    const TokenAmount item_pool = item_pools[k];
    paid += item_pool;
    if (item_pool.is_zero()) continue;
    const auto author_micro = static_cast<std::int64_t>(
        std::floor(static_cast<long double>(item_pool.micro_units()) * state.params.creator_split));
    const TokenAmount author_share = TokenAmount::micro(std::clamp<std::int64_t>(author_micro, 0, item_pool.micro_units()));
    report.payouts[closing[k]->author] += author_share;
    const TokenAmount curator_share = item_pool - author_share;
    if (!curator_share.is_zero()) split_to_smallest(curator_share, claims[k], report.payouts);
  }
  report.rollover = epoch_pool - paid;

  // Curation reputation: voters on items in the top quartile of their
  // cluster (by neighborhood-relative score among co-closing items).
  if (!closing.empty()) {
    const CandidatePool pool = make_pool(reg);
    std::map<ClusterId, std::vector<std::pair<double, ContentId>>> by_cluster;
    for (const auto* item : closing) {
      const double rel = relative_score(item->total_weight, pool.stats[static_cast<std::size_t>(item->cluster)]);
      by_cluster[item->cluster].emplace_back(rel, item->id);
    }
    std::set<std::string> boosted;
    for (auto& [_, ranked] : by_cluster) {
      std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
      });
      const std::size_t top = (ranked.size() + 3) / 4;
      for (std::size_t r = 0; r < top; ++r) {
        if (!(ranked[r].first > 0.0)) break;
        for (const auto& g : reg.live.at(ranked[r].second).engagements)
          if (g.weight > 0.0) boosted.insert(g.voter);
      }
    }
    for (const auto& voter : boosted) {
      Account& a = state.account(voter);
      a.reputation = std::min(kMaxReputation, a.reputation * (1.0 + state.params.rep_alpha));
    }
    report.boosted.assign(boosted.begin(), boosted.end());
  }

  for (const auto& [id, amount] : report.payouts) state.account(id).ept += amount;
  state.escrow -= paid;
  for (const auto* item : closing) report.closed_content.push_back(item->id);
  for (ContentId id : report.closed_content) remove_item(reg, reg.live.at(id));
  return report;
}

}  // namespace epistral
