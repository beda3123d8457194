#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace epistral {

using ContentId = std::int64_t;
using ClusterId = std::int32_t;

// Unit-normalized content embedding.
class Embedding {
 public:
  Embedding() = default;
  // Normalizes `raw` to unit L2 norm. A zero vector stays zero.
  explicit Embedding(std::vector<double> raw);

  std::size_t dimension() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  bool empty() const { return values_.empty(); }

  friend bool operator==(const Embedding&, const Embedding&) = default;

 private:
  std::vector<double> values_;
};

// Cosine similarity of two embeddings; throws DimensionMismatch.
double cosine(const Embedding& a, const Embedding& b);

struct ClusterLeader {
  ClusterId cluster = 0;
  ContentId content = 0;
  Embedding embedding;
};

// Streaming leader clustering plus explicit-label clusters. Cluster ids are
// handed out in first-seen order from a single counter shared by both
// kinds, so labeled and embedding clusters never collide.
class ClusterIndex {
 public:
  // Joins the leader with the highest cosine >= tau (lowest cluster id on
  // ties) or founds a new cluster led by `content`.
  ClusterId assign(ContentId content, const Embedding& embedding, double tau);
  ClusterId assign_label(const std::string& label);

  std::size_t cluster_count() const { return static_cast<std::size_t>(next_id_); }
  const std::vector<ClusterLeader>& leaders() const { return leaders_; }
  const std::map<std::string, ClusterId>& labels() const { return labels_; }

 private:
  std::vector<ClusterLeader> leaders_;
  std::map<std::string, ClusterId> labels_;
  ClusterId next_id_ = 0;
};

struct ClusterAssignment {
  std::map<ContentId, ClusterId> cluster_of;
  std::map<ClusterId, ContentId> leaders;
};

struct ClusterInput {
  ContentId id = 0;
  Embedding embedding;
};

// Batch leader clustering over items already ordered by content id.
ClusterAssignment assign_clusters(std::span<const ClusterInput> items, double tau);

// Shannon entropy in bits of the distribution given by per-cluster counts.
// Zero counts are skipped; N <= 1 gives 0.
double feed_entropy(std::span<const std::int64_t> counts);

}  // namespace epistral
