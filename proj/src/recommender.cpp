#include "epistral/recommender.hpp"

#include <algorithm>

#include "epistral/error.hpp"
#include "epistral/kernels.hpp"

namespace epistral {

namespace {

kernels::PoolView view_of(const CandidatePool& pool) {
  return {pool.ids, pool.clusters, pool.rel, pool.stats.size(), pool.max_rel};
}

kernels::FeedObjective objective_of(const ProtocolParams& p) { return {p.lambda, p.feed_size, p.cluster_cap()}; }

std::vector<std::uint8_t> exclusion_mask(const CandidatePool& pool, const FeedRequest& request) {
  std::vector<std::uint8_t> mask(pool.size(), 0);
  for (ContentId id : request.excluded) {
    const std::size_t i = pool.index_of(id);
    if (i < pool.size()) mask[i] = 1;
  }
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (pool.authors[i] == request.user) mask[i] = 1;
  return mask;
}

Feed to_feed(const CandidatePool& pool, const FeedRequest& request, kernels::FeedSelection sel) {
  Feed feed;
  feed.user = request.user;
  feed.items.reserve(sel.picked.size());
  for (std::size_t i : sel.picked) feed.items.push_back(pool.ids[i]);
  feed.per_cluster_counts = std::move(sel.counts);
  std::vector<std::int64_t> counts;
  for (const auto& [_, n] : feed.per_cluster_counts) counts.push_back(n);
  feed.achieved_entropy = feed_entropy(counts);
  feed.truncated = sel.truncated;
  return feed;
}

}  // namespace

double relative_score(double total_weight, const ClusterStats& stats) {
  return total_weight / (1.0 + stats.mean_weight);
}

double relative_score(const ContentItem& item, const ClusterStats& stats) {
  if (item.cluster != stats.cluster)
    throw Error(Errc::ClusterMismatch,
                "item " + std::to_string(item.id) + " is in cluster " + std::to_string(item.cluster));
  return relative_score(item.total_weight, stats);
}

std::size_t CandidatePool::index_of(ContentId id) const {
  auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it == ids.end() || *it != id) return ids.size();
  return static_cast<std::size_t>(it - ids.begin());
}

CandidatePool make_pool(std::vector<PoolItem> items) {
  std::sort(items.begin(), items.end(), [](const PoolItem& a, const PoolItem& b) { return a.id < b.id; });
  CandidatePool pool;
  const std::size_t n = items.size();
  pool.ids.reserve(n);
  pool.clusters.reserve(n);
  pool.weights.reserve(n);
  pool.authors.reserve(n);
  ClusterId max_cluster = -1;
  for (auto& it : items) {
    pool.ids.push_back(it.id);
    pool.clusters.push_back(it.cluster);
    pool.weights.push_back(it.weight);
    pool.authors.push_back(std::move(it.author));
    max_cluster = std::max(max_cluster, it.cluster);
  }
  pool.stats.resize(static_cast<std::size_t>(max_cluster + 1));
  std::vector<double> sums(pool.stats.size(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = static_cast<std::size_t>(pool.clusters[i]);
    ++pool.stats[c].member_count;
    sums[c] += pool.weights[i];
  }
  std::vector<double> means(pool.stats.size(), 0.0);
  for (std::size_t c = 0; c < pool.stats.size(); ++c) {
    pool.stats[c].cluster = static_cast<ClusterId>(c);
    if (pool.stats[c].member_count > 0) means[c] = sums[c] / static_cast<double>(pool.stats[c].member_count);
    pool.stats[c].mean_weight = means[c];
  }
  pool.rel.assign(n, 0.0);
  kernels::omp::relative_scores(pool.weights, pool.clusters, means, pool.rel);
  for (std::size_t i = 0; i < n; ++i) {
    auto& s = pool.stats[static_cast<std::size_t>(pool.clusters[i])];
    s.max_rel = std::max(s.max_rel, pool.rel[i]);
    pool.max_rel = std::max(pool.max_rel, pool.rel[i]);
  }
  return pool;
}

CandidatePool make_pool(const ContentRegistry& registry) {
  std::vector<PoolItem> items;
  items.reserve(registry.live.size());
  for (const auto& [id, item] : registry.live) items.push_back({id, item.cluster, item.total_weight, item.author});
  return make_pool(std::move(items));
}

CandidatePool make_pool(const ContentRegistry& registry, Tick now) {
  std::vector<PoolItem> items;
  items.reserve(registry.live.size());
  for (const auto& [id, item] : registry.live)
    if (item.published_at <= now && now <= item.expires_at)
      items.push_back({id, item.cluster, item.total_weight, item.author});
  return make_pool(std::move(items));
}

FeedRequest feed_request(const ContentRegistry& registry, const std::string& user) {
  FeedRequest req{user, {}};
  if (auto it = registry.engaged_by.find(user); it != registry.engaged_by.end())
    req.excluded.assign(it->second.begin(), it->second.end());
  return req;
}

Feed build_feed(const CandidatePool& pool, const FeedRequest& request, const ProtocolParams& params) {
  const auto mask = exclusion_mask(pool, request);
  return to_feed(pool, request, kernels::omp::select_feed(view_of(pool), mask, objective_of(params)));
}

std::vector<Feed> build_feeds(const CandidatePool& pool, std::span<const FeedRequest> requests,
                              const ProtocolParams& params) {
  std::vector<std::vector<std::uint8_t>> masks;
  masks.reserve(requests.size());
  for (const auto& r : requests) masks.push_back(exclusion_mask(pool, r));
  auto selections = kernels::omp::select_feeds(view_of(pool), masks, objective_of(params));
  std::vector<Feed> feeds;
  feeds.reserve(requests.size());
  for (std::size_t u = 0; u < requests.size(); ++u)
    feeds.push_back(to_feed(pool, requests[u], std::move(selections[u])));
  return feeds;
}

Feed build_feed_reference(const CandidatePool& pool, const FeedRequest& request, const ProtocolParams& params) {
  const auto mask = exclusion_mask(pool, request);
  return to_feed(pool, request, kernels::serial::select_feed(view_of(pool), mask, objective_of(params)));
}

}  // namespace epistral
