// Serial reference versus OpenMP kernels on pool sizes seen in the
// anti-dominance scenario.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "epistral/kernels.hpp"
#include "epistral/semantic_space.hpp"

using namespace epistral;

namespace {

struct PoolData {
  std::vector<ContentId> ids;
  std::vector<ClusterId> clusters;
  std::vector<double> weights;
  std::vector<double> rel;
  std::vector<double> means;
  std::vector<std::uint8_t> excluded;
  std::size_t cluster_count = 0;
  double max_rel = 0.0;

  kernels::PoolView view() const { return {ids, clusters, rel, cluster_count, max_rel}; }
};

PoolData make_data(std::int64_t n, std::size_t clusters) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> w(0.0, 1000.0);
  PoolData d;
  d.cluster_count = clusters;
  std::vector<double> sums(clusters, 0.0), counts(clusters, 0.0);
  for (std::int64_t i = 0; i < n; ++i) {
    d.ids.push_back(i);
    // One dominant cluster, the rest spread thin.
    const auto c = static_cast<ClusterId>(i % 10 == 0 ? 1 + gen() % (clusters - 1) : 0);
    d.clusters.push_back(c);
    d.weights.push_back(w(gen));
    sums[static_cast<std::size_t>(c)] += d.weights.back();
    counts[static_cast<std::size_t>(c)] += 1.0;
  }
  for (std::size_t c = 0; c < clusters; ++c) d.means.push_back(counts[c] > 0 ? sums[c] / counts[c] : 0.0);
  d.rel.resize(d.weights.size());
  kernels::serial::relative_scores(d.weights, d.clusters, d.means, d.rel);
  for (double r : d.rel) d.max_rel = std::max(d.max_rel, r);
  d.excluded.assign(d.ids.size(), 0);
  return d;
}

const kernels::FeedObjective kObjective{0.5, 20, 4};

void BM_SelectFeedSerial(benchmark::State& state) {
  const auto d = make_data(state.range(0), 8);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::select_feed(d.view(), d.excluded, kObjective));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SelectFeedOmp(benchmark::State& state) {
  const auto d = make_data(state.range(0), 8);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::omp::select_feed(d.view(), d.excluded, kObjective));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_RelativeScoresSerial(benchmark::State& state) {
  auto d = make_data(state.range(0), 8);
  for (auto _ : state) {
    kernels::serial::relative_scores(d.weights, d.clusters, d.means, d.rel);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_RelativeScoresOmp(benchmark::State& state) {
  auto d = make_data(state.range(0), 8);
  for (auto _ : state) {
    kernels::omp::relative_scores(d.weights, d.clusters, d.means, d.rel);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

std::vector<ClusterLeader> make_leaders(std::int64_t n) {
  std::mt19937_64 gen(23);
  std::normal_distribution<double> g;
  std::vector<ClusterLeader> leaders;
  for (std::int64_t i = 0; i < n; ++i) {
    std::vector<double> v(32);
    for (auto& x : v) x = g(gen);
    leaders.push_back({static_cast<ClusterId>(i), i, Embedding(v)});
  }
  return leaders;
}

void BM_BestLeaderSerial(benchmark::State& state) {
  const auto leaders = make_leaders(state.range(0));
  const Embedding probe = leaders.back().embedding;
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::best_leader(leaders, probe, 0.8));
}

void BM_BestLeaderOmp(benchmark::State& state) {
  const auto leaders = make_leaders(state.range(0));
  const Embedding probe = leaders.back().embedding;
  for (auto _ : state) benchmark::DoNotOptimize(kernels::omp::best_leader(leaders, probe, 0.8));
}

}  // namespace

BENCHMARK(BM_SelectFeedSerial)->Arg(10'000)->Arg(100'000);
BENCHMARK(BM_SelectFeedOmp)->Arg(10'000)->Arg(100'000);
BENCHMARK(BM_RelativeScoresSerial)->Arg(100'000)->Arg(1'000'000);
BENCHMARK(BM_RelativeScoresOmp)->Arg(100'000)->Arg(1'000'000);
BENCHMARK(BM_BestLeaderSerial)->Arg(1'000)->Arg(20'000);
BENCHMARK(BM_BestLeaderOmp)->Arg(1'000)->Arg(20'000);

BENCHMARK_MAIN();
