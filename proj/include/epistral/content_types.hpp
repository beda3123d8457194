#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "epistral/params.hpp"
#include "epistral/semantic_space.hpp"

namespace epistral {

using Tick = std::int64_t;

struct Engagement {
  std::string voter;
  EngagementKind kind = EngagementKind::View;
  Tick tick = 0;
  double weight = 0.0;
};

struct ContentItem {
  ContentId id = 0;
  std::string author;
  Embedding embedding;                 // empty when published by label
  std::optional<std::string> label;    // wins over the embedding when present
  ClusterId cluster = 0;
  Tick published_at = 0;
  Tick expires_at = 0;                 // last tick engagements are accepted
  std::vector<Engagement> engagements;
  double total_weight = 0.0;
};

// Live content plus the lookup indexes derived from it. The indexes are
// maintained by the lifecycle operations and are not part of the hash.
struct ContentRegistry {
  std::map<ContentId, ContentItem> live;
  ContentId next_id = 0;
  ClusterIndex clusters;

  std::map<ClusterId, std::vector<ContentId>> members;     // ascending ids
  std::map<std::string, std::set<ContentId>> engaged_by;   // voter -> items

  const ContentItem* find(ContentId id) const {
    auto it = live.find(id);
    return it == live.end() ? nullptr : &it->second;
  }
  bool has_engaged(const std::string& voter, ContentId id) const {
    auto it = engaged_by.find(voter);
    return it != engaged_by.end() && it->second.contains(id);
  }
};

}  // namespace epistral
