#pragma once

// Data-parallel inner loops. Each kernel has a plain serial version kept as
// the reference and an OpenMP version used by the simulator. Both variants
// produce bit-identical results: reductions are either exact (max with a
// total-order tie-break) or done per element.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "epistral/semantic_space.hpp"

namespace epistral::kernels {

double dot(std::span<const double> a, std::span<const double> b);

// Read-only view of a candidate pool laid out as parallel arrays in
// ascending content-id order.
struct PoolView {
  std::span<const ContentId> ids;
  std::span<const ClusterId> clusters;
  std::span<const double> rel;  // neighborhood-relative scores
  std::size_t cluster_count = 0;
  double max_rel = 0.0;
};

struct FeedObjective {
  double lambda = 0.5;
  std::int64_t feed_size = 20;
  std::int64_t cluster_cap = 4;
};

struct FeedSelection {
  std::vector<std::size_t> picked;  // pool indices in selection order
  std::map<ClusterId, std::int64_t> counts;
  bool truncated = false;
};

// Entropy in bits of `counts` after adding one item to `cluster`.
double entropy_with(const std::map<ClusterId, std::int64_t>& counts, ClusterId cluster);

// lambda * H/log2(F) + (1 - lambda) * rel/max_rel, with the rel term zero
// when max_rel is zero and the entropy term zero when F == 1.
double feed_objective(const FeedObjective& obj, double entropy, double rel, double max_rel);

namespace serial {

std::optional<std::size_t> best_leader(std::span<const ClusterLeader> leaders, const Embedding& e, double tau);

void relative_scores(std::span<const double> weights, std::span<const ClusterId> clusters,
                     std::span<const double> cluster_mean, std::span<double> out);

// Literal greedy: every step evaluates the objective for every eligible
// candidate. `excluded` is indexed like the pool (nonzero = skip).
FeedSelection select_feed(const PoolView& pool, std::span<const std::uint8_t> excluded, const FeedObjective& obj);

}  // namespace serial

namespace omp {

std::optional<std::size_t> best_leader(std::span<const ClusterLeader> leaders, const Embedding& e, double tau);

void relative_scores(std::span<const double> weights, std::span<const ClusterId> clusters,
                     std::span<const double> cluster_mean, std::span<double> out);

// Same selection as serial::select_feed; per-step argmax runs as a parallel
// reduction and the entropy term is tabulated once per cluster.
FeedSelection select_feed(const PoolView& pool, std::span<const std::uint8_t> excluded, const FeedObjective& obj);

// One feed per exclusion mask, users processed in parallel.
std::vector<FeedSelection> select_feeds(const PoolView& pool, std::span<const std::vector<std::uint8_t>> excluded,
                                        const FeedObjective& obj);

}  // namespace omp

}  // namespace epistral::kernels
