#include "epistral/semantic_space.hpp"

#include <algorithm>
#include <cmath>

#include "epistral/error.hpp"
#include "epistral/kernels.hpp"

namespace epistral {

Embedding::Embedding(std::vector<double> raw) : values_(std::move(raw)) {
  double sq = 0.0;
  for (double v : values_) sq += v * v;
  if (sq > 0.0) {
    const double inv = 1.0 / std::sqrt(sq);
    for (double& v : values_) v *= inv;
  }
}

double cosine(const Embedding& a, const Embedding& b) {
  if (a.dimension() != b.dimension())
    throw Error(Errc::DimensionMismatch, std::to_string(a.dimension()) + " vs " + std::to_string(b.dimension()));
  const double c = kernels::dot(a.values(), b.values());
  return std::clamp(c, -1.0, 1.0);
}

ClusterId ClusterIndex::assign(ContentId content, const Embedding& embedding, double tau) {
  if (!leaders_.empty() && leaders_.front().embedding.dimension() != embedding.dimension())
    throw Error(Errc::DimensionMismatch, "embedding dimension differs from existing leaders");
  const auto best = kernels::omp::best_leader(leaders_, embedding, tau);
  if (best) return leaders_[*best].cluster;
  const ClusterId id = next_id_++;
  leaders_.push_back({id, content, embedding});
  return id;
}

ClusterId ClusterIndex::assign_label(const std::string& label) {
  auto [it, inserted] = labels_.try_emplace(label, next_id_);
  if (inserted) ++next_id_;
  return it->second;
}

ClusterAssignment assign_clusters(std::span<const ClusterInput> items, double tau) {
  ClusterAssignment out;
  ClusterIndex index;
  for (const auto& item : items) {
    const ClusterId c = index.assign(item.id, item.embedding, tau);
    out.cluster_of[item.id] = c;
  }
  for (const auto& leader : index.leaders()) out.leaders[leader.cluster] = leader.content;
  return out;
}

double feed_entropy(std::span<const std::int64_t> counts) {
  std::int64_t total = 0;
  for (auto n : counts) total += n;
  if (total <= 1) return 0.0;
  const double inv = 1.0 / static_cast<double>(total);
  double h = 0.0;
  for (auto n : counts) {
    if (n <= 0) continue;
    const double p = static_cast<double>(n) * inv;
    h -= p * std::log2(p);
  }
  return h < 0.0 ? 0.0 : h;
}

}  // namespace epistral
