#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "epistral/error.hpp"
#include "epistral/semantic_space.hpp"
#include "oracles.hpp"

using namespace epistral;

TEST_CASE("embeddings are unit normalized") {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> n(0.0, 5.0);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> v(16);
    for (auto& x : v) x = n(gen);
    Embedding e(v);
    double sq = 0.0;
    for (double x : e.values()) sq += x * x;
    CHECK(std::abs(std::sqrt(sq) - 1.0) <= 1e-9);
  }
}

TEST_CASE("cosine") {
  const Embedding x({1.0, 0.0});
  const Embedding y({0.0, 1.0});
  const Embedding z({0.9, 0.1});
  CHECK(cosine(x, y) == 0.0);
  CHECK(cosine(x, x) == doctest::Approx(1.0).epsilon(1e-15));
  // 0.9 / sqrt(0.82) by hand.
  CHECK(cosine(x, z) == doctest::Approx(0.9 / std::sqrt(0.82)).epsilon(1e-12));
  CHECK(std::abs(cosine(x, z) - 0.9939) < 1e-4);
  CHECK(cosine(x, z) == cosine(z, x));
  try {
    cosine(x, Embedding({1.0, 0.0, 0.0}));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DimensionMismatch);
  }
}

TEST_CASE("leader clustering") {
  std::vector<ClusterInput> items{{0, Embedding({1.0, 0.0})}, {1, Embedding({0.9, 0.1})}, {2, Embedding({0.0, 1.0})}};
  const auto a = assign_clusters(items, 0.8);
  CHECK(a.cluster_of.at(0) == 0);
  CHECK(a.cluster_of.at(1) == 0);
  CHECK(a.cluster_of.at(2) == 1);
  CHECK(a.leaders.at(0) == 0);
  CHECK(a.leaders.at(1) == 2);

  const auto single = assign_clusters(std::span(items).first(1), 0.8);
  CHECK(single.cluster_of.size() == 1);
  CHECK(single.leaders.size() == 1);
  CHECK(assign_clusters({}, 0.8).cluster_of.empty());
}

TEST_CASE("clustering joins the most similar leader and breaks ties by lower id") {
  ClusterIndex idx;
  CHECK(idx.assign(0, Embedding({1.0, 0.0}), 0.5) == 0);
  CHECK(idx.assign(1, Embedding({0.0, 1.0}), 0.5) == 1);
  // Closer to leader 1.
  CHECK(idx.assign(2, Embedding({0.4, 0.6}), 0.5) == 1);
  // Equidistant from both leaders.
  CHECK(idx.assign(3, Embedding({1.0, 1.0}), 0.5) == 0);
  CHECK(idx.cluster_count() == 2);
}

TEST_CASE("clustering properties over random streams") {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<ClusterInput> items;
    for (int i = 0; i < 200; ++i) {
      std::vector<double> v(8);
      for (auto& x : v) x = n(gen);
      items.push_back({i, Embedding(v)});
    }
    // Exact duplicates of earlier items.
    for (int i = 0; i < 20; ++i) items.push_back({200 + i, items[static_cast<std::size_t>(i * 7)].embedding});
    const auto is_leader = [](const ClusterAssignment& a, ContentId id) {
      return std::any_of(a.leaders.begin(), a.leaders.end(), [&](const auto& kv) { return kv.second == id; });
    };
    const double tau = 0.3 + 0.7 * (trial / 20.0);
    const auto a = assign_clusters(items, tau);
    const auto b = assign_clusters(items, tau);
    CHECK(a.cluster_of == b.cluster_of);
    CHECK(a.leaders == b.leaders);
    CHECK(a.cluster_of.size() == items.size());
    // A duplicate of a leader lands in that leader's cluster.
    for (int i = 0; i < 20; ++i)
      if (is_leader(a, i * 7)) CHECK(a.cluster_of.at(200 + i) == a.cluster_of.at(i * 7));
    // Ids are first-seen: cluster k first appears after cluster k-1.
    ClusterId seen = -1;
    for (const auto& [_, c] : a.cluster_of) {
      CHECK(c <= seen + 1);
      seen = std::max(seen, c);
    }
  }
}

TEST_CASE("labels get their own clusters from the shared counter") {
  ClusterIndex idx;
  CHECK(idx.assign_label("musk") == 0);
  CHECK(idx.assign(5, Embedding({1.0, 0.0}), 0.8) == 1);
  CHECK(idx.assign_label("einstein") == 2);
  CHECK(idx.assign_label("musk") == 0);
}

TEST_CASE("feed entropy") {
  const std::vector<std::int64_t> uniform{2, 2, 2, 2};
  const std::vector<std::int64_t> skewed{4, 2, 2};
  const std::vector<std::int64_t> one{8};
  CHECK(feed_entropy(uniform) == 2.0);
  CHECK(feed_entropy(skewed) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(feed_entropy(one) == 0.0);
  CHECK(feed_entropy(std::vector<std::int64_t>{}) == 0.0);
  CHECK(feed_entropy(std::vector<std::int64_t>{1}) == 0.0);
  CHECK(feed_entropy(std::vector<std::int64_t>{0, 3, 0, 3}) == doctest::Approx(1.0));
}

TEST_CASE("feed entropy bounds, permutation invariance and oracle agreement") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::int64_t> counts(gen() % 12 + 1);
    for (auto& c : counts) c = static_cast<std::int64_t>(gen() % 9);
    const double h = feed_entropy(counts);
    const auto nonzero = std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; });
    CHECK(h >= 0.0);
    if (nonzero > 0) CHECK(h <= std::log2(static_cast<double>(nonzero)) + 1e-12);
    CHECK(std::abs(h - oracle::entropy_bits(counts)) <= 1e-12);
    std::shuffle(counts.begin(), counts.end(), gen);
    CHECK(std::abs(feed_entropy(counts) - h) <= 1e-12);
  }
}
