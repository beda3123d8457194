#include <algorithm>
#include "epistral/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <limits>

namespace epistral::kernels {

namespace {

// Pools smaller than this are scanned on the calling thread.
constexpr std::size_t kParallelThreshold = 4096;

struct Best {
  double obj = -std::numeric_limits<double>::infinity();
  ContentId id = std::numeric_limits<ContentId>::max();
  std::int64_t index = -1;
};

// Higher objective wins; equal objectives go to the lower content id.
inline bool better(const Best& a, const Best& b) {
  if (a.index < 0) return false;
  if (b.index < 0) return true;
  if (a.obj != b.obj) return a.obj > b.obj;
  return a.id < b.id;
}

inline Best pick(const Best& a, const Best& b) { return better(a, b) ? a : b; }

#pragma omp declare reduction(best_of : Best : omp_out = pick(omp_in, omp_out)) initializer(omp_priv = Best{})

struct LeaderBest {
  double sim = -std::numeric_limits<double>::infinity();
  ClusterId cluster = std::numeric_limits<ClusterId>::max();
  std::int64_t index = -1;
};

inline LeaderBest pick_leader(const LeaderBest& a, const LeaderBest& b) {
  if (a.index < 0) return b;
  if (b.index < 0) return a;
  if (a.sim != b.sim) return a.sim > b.sim ? a : b;
  return a.cluster < b.cluster ? a : b;
}

#pragma omp declare reduction(leader_of : LeaderBest : omp_out = pick_leader(omp_in, omp_out)) \
    initializer(omp_priv = LeaderBest{})

inline void consider_leader(LeaderBest& best, std::span<const ClusterLeader> leaders, std::size_t i,
                            const Embedding& e, double tau) {
  double sim = dot(leaders[i].embedding.values(), e.values());
  sim = sim > 1.0 ? 1.0 : (sim < -1.0 ? -1.0 : sim);
  if (sim >= tau) best = pick_leader(best, LeaderBest{sim, leaders[i].cluster, static_cast<std::int64_t>(i)});
}

// Shared greedy driver. `step` returns the best candidate for the current
// counts, or index -1 when nothing is eligible.
template <typename Step>
FeedSelection greedy(const PoolView& pool, const FeedObjective& obj, Step&& step) {
  FeedSelection sel;
  std::vector<std::uint8_t> taken(pool.ids.size(), 0);
  const auto target = static_cast<std::size_t>(obj.feed_size < 0 ? 0 : obj.feed_size);
  while (sel.picked.size() < target) {
    const Best b = step(taken, sel.counts);
    if (b.index < 0) {
      sel.truncated = true;
      break;
    }
    const auto i = static_cast<std::size_t>(b.index);
    taken[i] = 1;
    sel.picked.push_back(i);
    ++sel.counts[pool.clusters[i]];
  }
  return sel;
}

inline bool cluster_open(const std::map<ClusterId, std::int64_t>& counts, ClusterId c, std::int64_t cap) {
  auto it = counts.find(c);
  return (it == counts.end() ? 0 : it->second) < cap;
}

// Entropy term per cluster for the current counts; NaN marks capped clusters.
std::vector<double> entropy_table(const PoolView& pool, const std::map<ClusterId, std::int64_t>& counts,
                                  std::int64_t cap) {
  std::vector<double> table(pool.cluster_count, std::numeric_limits<double>::quiet_NaN());
  std::vector<std::uint8_t> present(pool.cluster_count, 0);
  for (ClusterId c : pool.clusters) present[static_cast<std::size_t>(c)] = 1;
  for (std::size_t c = 0; c < pool.cluster_count; ++c) {
    const auto id = static_cast<ClusterId>(c);
    if (present[c] && cluster_open(counts, id, cap)) table[c] = entropy_with(counts, id);
  }
  return table;
}

FeedSelection select_tabulated(const PoolView& pool, std::span<const std::uint8_t> excluded,
                               const FeedObjective& obj, bool parallel) {
  const auto n = static_cast<std::int64_t>(pool.ids.size());
  return greedy(pool, obj, [&](const std::vector<std::uint8_t>& taken, const auto& counts) {
    const std::vector<double> table = entropy_table(pool, counts, obj.cluster_cap);
    Best best;
#pragma omp parallel for reduction(best_of : best) schedule(static) if (parallel)
    for (std::int64_t i = 0; i < n; ++i) {
      if (taken[i] || excluded[i]) continue;
      const double h = table[static_cast<std::size_t>(pool.clusters[i])];
      if (std::isnan(h)) continue;
      best = pick(best, Best{feed_objective(obj, h, pool.rel[i], pool.max_rel), pool.ids[i], i});
    }
    return best;
  });
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double entropy_with(const std::map<ClusterId, std::int64_t>& counts, ClusterId cluster) {
  // Sorted so that clusters with equal counts tie exactly.
  std::vector<std::int64_t> v;
  v.reserve(counts.size() + 1);
  bool added = false;
  for (const auto& [c, n] : counts) {
    v.push_back(c == cluster ? n + 1 : n);
    added = added || c == cluster;
  }
  if (!added) v.push_back(1);
  std::sort(v.begin(), v.end());
  return feed_entropy(v);
}

double feed_objective(const FeedObjective& obj, double entropy, double rel, double max_rel) {
  const double norm = obj.feed_size > 1 ? std::log2(static_cast<double>(obj.feed_size)) : 0.0;
  const double diversity = norm > 0.0 ? entropy / norm : 0.0;
  const double quality = max_rel > 0.0 ? rel / max_rel : 0.0;
  return obj.lambda * diversity + (1.0 - obj.lambda) * quality;
}

namespace serial {

std::optional<std::size_t> best_leader(std::span<const ClusterLeader> leaders, const Embedding& e, double tau) {
  LeaderBest best;
  for (std::size_t i = 0; i < leaders.size(); ++i) consider_leader(best, leaders, i, e, tau);
  if (best.index < 0) return std::nullopt;
  return static_cast<std::size_t>(best.index);
}

void relative_scores(std::span<const double> weights, std::span<const ClusterId> clusters,
                     std::span<const double> cluster_mean, std::span<double> out) {
  for (std::size_t i = 0; i < weights.size(); ++i)
    out[i] = weights[i] / (1.0 + cluster_mean[static_cast<std::size_t>(clusters[i])]);
}

FeedSelection select_feed(const PoolView& pool, std::span<const std::uint8_t> excluded, const FeedObjective& obj) {
  return greedy(pool, obj, [&](const std::vector<std::uint8_t>& taken, const auto& counts) {
    Best best;
    for (std::size_t i = 0; i < pool.ids.size(); ++i) {
      if (taken[i] || excluded[i]) continue;
      if (!cluster_open(counts, pool.clusters[i], obj.cluster_cap)) continue;
      const double h = entropy_with(counts, pool.clusters[i]);
      best = pick(best, Best{feed_objective(obj, h, pool.rel[i], pool.max_rel), pool.ids[i],
                             static_cast<std::int64_t>(i)});
    }
    return best;
  });
}

}  // namespace serial

namespace omp {

std::optional<std::size_t> best_leader(std::span<const ClusterLeader> leaders, const Embedding& e, double tau) {
  const auto n = static_cast<std::int64_t>(leaders.size());
  LeaderBest best;
#pragma omp parallel for reduction(leader_of : best) schedule(static) if (leaders.size() >= kParallelThreshold)
  for (std::int64_t i = 0; i < n; ++i) consider_leader(best, leaders, static_cast<std::size_t>(i), e, tau);
  if (best.index < 0) return std::nullopt;
  return static_cast<std::size_t>(best.index);
}

void relative_scores(std::span<const double> weights, std::span<const ClusterId> clusters,
                     std::span<const double> cluster_mean, std::span<double> out) {
  const auto n = static_cast<std::int64_t>(weights.size());
#pragma omp parallel for schedule(static) if (weights.size() >= kParallelThreshold)
  for (std::int64_t i = 0; i < n; ++i)
    out[i] = weights[i] / (1.0 + cluster_mean[static_cast<std::size_t>(clusters[i])]);
}

FeedSelection select_feed(const PoolView& pool, std::span<const std::uint8_t> excluded, const FeedObjective& obj) {
  const bool parallel = pool.ids.size() >= kParallelThreshold && !omp_in_parallel();
  return select_tabulated(pool, excluded, obj, parallel);
}

std::vector<FeedSelection> select_feeds(const PoolView& pool, std::span<const std::vector<std::uint8_t>> excluded,
                                        const FeedObjective& obj) {
  std::vector<FeedSelection> out(excluded.size());
  const auto n = static_cast<std::int64_t>(excluded.size());
#pragma omp parallel for schedule(dynamic, 1) if (n > 1)
  for (std::int64_t u = 0; u < n; ++u) out[u] = select_tabulated(pool, excluded[u], obj, false);
  return out;
}

}  // namespace omp

}  // namespace epistral::kernels
