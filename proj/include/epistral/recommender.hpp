#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "epistral/content_types.hpp"
#include "epistral/params.hpp"

namespace epistral {

struct ClusterStats {
  ClusterId cluster = 0;
  std::int64_t member_count = 0;
  double mean_weight = 0.0;
  double max_rel = 0.0;
};

// total_weight / (1 + mean cluster weight).
double relative_score(double total_weight, const ClusterStats& stats);
// Throws ClusterMismatch when `item` is not in `stats.cluster`.
double relative_score(const ContentItem& item, const ClusterStats& stats);

struct PoolItem {
  ContentId id = 0;
  ClusterId cluster = 0;
  double weight = 0.0;
  std::string author;
};

// Immutable snapshot of the feed candidates, in ascending content id.
struct CandidatePool {
  std::vector<ContentId> ids;
  std::vector<ClusterId> clusters;
  std::vector<double> weights;
  std::vector<double> rel;
  std::vector<std::string> authors;
  std::vector<ClusterStats> stats;  // indexed by cluster id
  double max_rel = 0.0;

  std::size_t size() const { return ids.size(); }
  // Position of `id` in the pool, or size() when absent.
  std::size_t index_of(ContentId id) const;
};

CandidatePool make_pool(std::vector<PoolItem> items);
CandidatePool make_pool(const ContentRegistry& registry);
// Only items whose engagement window contains `now`.
CandidatePool make_pool(const ContentRegistry& registry, Tick now);

struct Feed {
  std::string user;
  std::vector<ContentId> items;
  std::map<ClusterId, std::int64_t> per_cluster_counts;
  double achieved_entropy = 0.0;
  bool truncated = false;
};

// Content the user must not be shown: anything they authored or already
// engaged with.
struct FeedRequest {
  std::string user;
  std::vector<ContentId> excluded;  // ascending
};

FeedRequest feed_request(const ContentRegistry& registry, const std::string& user);

Feed build_feed(const CandidatePool& pool, const FeedRequest& request, const ProtocolParams& params);
// Batch variant; feeds for distinct users are built in parallel.
std::vector<Feed> build_feeds(const CandidatePool& pool, std::span<const FeedRequest> requests,
                              const ProtocolParams& params);

// Literal reference greedy for cross-checking the production path.
Feed build_feed_reference(const CandidatePool& pool, const FeedRequest& request, const ProtocolParams& params);

}  // namespace epistral
