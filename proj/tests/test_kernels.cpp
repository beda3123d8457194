#include <omp.h>

#include <random>

#include "doctest.h"
#include "epistral/kernels.hpp"
#include "epistral/recommender.hpp"

using namespace epistral;

namespace {

std::vector<PoolItem> pool_items(std::mt19937_64& gen, int clusters, int n) {
  std::vector<PoolItem> items;
  std::lognormal_distribution<double> w(1.0, 2.0);
  for (int i = 0; i < n; ++i) {
    // Coarse weights produce many exact objective ties.
    const double weight = (gen() % 3 == 0) ? std::floor(w(gen)) : w(gen);
    items.push_back({i * 3, static_cast<ClusterId>(gen() % static_cast<std::uint64_t>(clusters)), weight,
                     "a" + std::to_string(gen() % 10)});
  }
  return items;
}

}  // namespace

TEST_CASE("parallel feed selection matches the serial reference") {
  std::mt19937_64 gen(41);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = trial < 30 ? static_cast<int>(gen() % 300) : 5000 + static_cast<int>(gen() % 20000);
    const auto pool = make_pool(pool_items(gen, 1 + static_cast<int>(gen() % 12), n));
    ProtocolParams p;
    p.feed_size = 1 + static_cast<std::int64_t>(gen() % 40);
    p.cap_frac = 0.05 + 0.95 * (gen() % 100) / 100.0;
    p.lambda = (gen() % 11) / 10.0;
    FeedRequest req{"a" + std::to_string(gen() % 12), {}};
    for (int k = 0; k < 20 && n > 0; ++k) req.excluded.push_back(static_cast<ContentId>(3 * (gen() % n)));
    std::sort(req.excluded.begin(), req.excluded.end());
    req.excluded.erase(std::unique(req.excluded.begin(), req.excluded.end()), req.excluded.end());
    const Feed ref = build_feed_reference(pool, req, p);
    const Feed fast = build_feed(pool, req, p);
    CHECK(ref.items == fast.items);
    CHECK(ref.per_cluster_counts == fast.per_cluster_counts);
    CHECK(ref.truncated == fast.truncated);
  }
}

TEST_CASE("kernel results do not depend on the thread count") {
  std::mt19937_64 gen(43);
  const auto pool = make_pool(pool_items(gen, 5, 30000));
  const ProtocolParams p;
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const Feed one = build_feed(pool, {"a1", {}}, p);
  omp_set_num_threads(4);
  const Feed four = build_feed(pool, {"a1", {}}, p);
  std::vector<FeedRequest> reqs(6, FeedRequest{"a2", {}});
  const auto batch = build_feeds(pool, reqs, p);
  omp_set_num_threads(saved);
  CHECK(one.items == four.items);
  for (const auto& f : batch) CHECK(f.items == build_feed_reference(pool, reqs[0], p).items);
}

TEST_CASE("relative score kernels agree") {
  std::mt19937_64 gen(47);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  const std::size_t n = 20000;
  std::vector<double> w(n), mean(7);
  std::vector<ClusterId> c(n);
  for (auto& m : mean) m = u(gen);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = u(gen);
    c[i] = static_cast<ClusterId>(gen() % 7);
  }
  std::vector<double> a(n), b(n);
  kernels::serial::relative_scores(w, c, mean, a);
  kernels::omp::relative_scores(w, c, mean, b);
  CHECK(a == b);
}

TEST_CASE("leader search kernels agree") {
  std::mt19937_64 gen(53);
  std::normal_distribution<double> nd;
  std::vector<ClusterLeader> leaders;
  for (int i = 0; i < 6000; ++i) {
    std::vector<double> v(16);
    for (auto& x : v) x = nd(gen);
    leaders.push_back({i, i, Embedding(v)});
  }
  leaders.push_back({6000, 6000, leaders[10].embedding});  // exact tie with cluster 10
  for (int q = 0; q < 50; ++q) {
    std::vector<double> v(16);
    for (auto& x : v) x = nd(gen);
    const Embedding e = q == 0 ? leaders[10].embedding : Embedding(v);
    const double tau = q % 2 ? 0.5 : 0.0;
    const auto s = kernels::serial::best_leader(leaders, e, tau);
    const auto p = kernels::omp::best_leader(leaders, e, tau);
    CHECK(s == p);
    if (q == 0) CHECK(leaders[*s].cluster == 10);
  }
}
