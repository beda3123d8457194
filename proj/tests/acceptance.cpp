// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "epistral/content_lifecycle.hpp"
#include "epistral/error.hpp"
#include "epistral/governance.hpp"
#include "epistral/metrics.hpp"
#include "epistral/recommender.hpp"
#include "epistral/simulation.hpp"
#include "epistral/token_economy.hpp"
#include "epistral/trace_io.hpp"
#include "oracles.hpp"

using namespace epistral;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

std::string scenario(const char* file) { return std::string(EPISTRAL_SCENARIO_DIR) + "/" + file; }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Runs the scenario and checks every feed of every tick against the caps.
Outcome dominance_run(ScenarioConfig config, double limit_s, const char* tag) {
  Outcome out;
  Simulation sim(std::move(config));
  std::size_t feeds = 0;
  std::int64_t worst_bot = 0;
  std::int64_t fewest_organic = 1 << 30;
  sim.on_tick([&](const TickView& v) {
    const auto& labels = v.state.content.clusters.labels();
    const ClusterId bot = labels.at("musk");
    const ClusterId organic = labels.at("einstein");
    for (const auto& f : v.feeds) {
      ++feeds;
      const auto bot_it = f.per_cluster_counts.find(bot);
      const auto org_it = f.per_cluster_counts.find(organic);
      const std::int64_t nb = bot_it == f.per_cluster_counts.end() ? 0 : bot_it->second;
      const std::int64_t no = org_it == f.per_cluster_counts.end() ? 0 : org_it->second;
      worst_bot = std::max(worst_bot, nb);
      fewest_organic = std::min(fewest_organic, no);
      if (nb > 4) out.fail(fmt("%s tick %lld: %lld bot items in a feed", tag, (long long)v.tick, (long long)nb));
      if (no < 1) out.fail(fmt("%s tick %lld: feed without organic items", tag, (long long)v.tick));
    }
  });
  const auto start = std::chrono::steady_clock::now();
  const auto trace = sim.run();
  const double elapsed = seconds_since(start);
  std::int64_t bot_items = 0;
  const ClusterId bot = trace.final_state.content.clusters.labels().at("musk");
  for (const auto& [_, item] : trace.final_state.content.live) bot_items += item.cluster == bot ? 1 : 0;
  if (feeds == 0) out.fail(std::string(tag) + ": no feeds built");
  if (elapsed >= limit_s) out.fail(fmt("%s took %.2fs (limit %.0fs)", tag, elapsed, limit_s));
  if (out.ok)
    out.detail = fmt("%s: %lld bot items, %zu feeds, max bot %lld, min organic %lld, %.2fs", tag,
                     (long long)bot_items, feeds, (long long)worst_bot, (long long)fewest_organic, elapsed);
  return out;
}

Outcome ac1() {
  const auto full_cfg = load_scenario(scenario("musk_einstein.json"));
  auto scaled_cfg = full_cfg;
  apply_scale(scaled_cfg, 10);
  Outcome full = dominance_run(full_cfg, 60.0, "full");
  Outcome scaled = dominance_run(scaled_cfg, 5.0, "scale 10");
  Outcome out;
  out.ok = full.ok && scaled.ok;
  out.detail = full.detail + "; " + scaled.detail;
  return out;
}

Outcome ac2() {
  Outcome out;
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> w(0.0, 100.0);
  ProtocolParams p;
  p.lambda = 1.0;
  p.feed_size = 8;
  const auto cap = static_cast<int>(p.cluster_cap());
  double lowest = 1e9;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<PoolItem> items;
    ContentId id = 0;
    for (ClusterId c = 0; c < 4; ++c) {
      const int n = cap + static_cast<int>(gen() % 20);
      for (int k = 0; k < n; ++k) items.push_back({id++, c, w(gen), "author"});
    }
    const Feed f = build_feed(make_pool(std::move(items)), {"reader", {}}, p);
    std::vector<std::int64_t> counts;
    for (const auto& [_, n] : f.per_cluster_counts) counts.push_back(n);
    const double h = oracle::entropy_bits(counts);
    lowest = std::min(lowest, f.achieved_entropy);
    if (f.achieved_entropy < 1.9) out.fail(fmt("trial %d: entropy %.6f", trial, f.achieved_entropy));
    if (std::abs(h - f.achieved_entropy) > 1e-12) out.fail(fmt("trial %d: reported entropy disagrees", trial));
  }
  if (out.ok) out.detail = fmt("min achieved entropy %.6f bits over 100 pools (cap %d)", lowest, cap);
  return out;
}

Outcome ac3() {
  Outcome out;
  Simulation sim(load_scenario(scenario("baseline_economy.json")));
  const std::int64_t initial = sim.state().initial_supply.micro_units();
  std::int64_t minted = 0;
  std::int64_t ticks = 0;
  std::int64_t worst = 0;
  sim.on_tick([&](const TickView& v) {
    ++ticks;
    std::int64_t held = 0;
    for (const auto& [_, a] : v.state.accounts) held += a.ept.micro_units() + a.ep.micro_units();
    held += v.state.escrow.micro_units() + v.state.debt.ept_backing.micro_units();
    const std::int64_t expected = initial + v.state.total_minted.micro_units() -
                                  v.state.debt.rounding_burned.micro_units() +
                                  v.state.debt.revaluation_minted.micro_units();
    const std::int64_t diff = held - expected;
    worst = std::max(worst, diff < 0 ? -diff : diff);
    if (diff != 0) out.fail(fmt("tick %lld: discrepancy %lld micro", (long long)v.tick, (long long)diff));
  });
  const auto trace = sim.run();
  for (const auto& r : trace.records) minted += r.minted.micro_units();
  if (minted != trace.final_state.total_minted.micro_units()) out.fail("per-tick minted does not sum to total");
  if (ticks != 100) out.fail(fmt("expected 100 ticks, saw %lld", (long long)ticks));
  if (out.ok)
    out.detail = fmt("%lld ticks, max discrepancy %lld micro, minted %s EPT", (long long)ticks, (long long)worst,
                     TokenAmount::micro(minted).to_string().c_str());
  return out;
}

Outcome ac4() {
  Outcome out;
  int checked = 0;
  for (const char* file : {"musk_einstein.json", "musk_einstein_10k.json", "ecommerce_reviews.json",
                           "baseline_economy.json"}) {
    const auto cfg = load_scenario(scenario(file));
    const auto a = run_scenario(cfg);
    const auto b = run_scenario(cfg);
    std::ostringstream ca, cb;
    write_csv(ca, a.records);
    write_csv(cb, b.records);
    if (ca.str() != cb.str()) out.fail(std::string(file) + ": CSV traces differ");
    if (a.final_hash != b.final_hash) out.fail(std::string(file) + ": hashes differ");
    auto reseeded = cfg;
    reseeded.seed += 1;
    if (run_scenario(reseeded).final_hash == a.final_hash) out.fail(std::string(file) + ": seed change kept the hash");
    ++checked;
  }
  if (out.ok) out.detail = fmt("%d packaged scenarios reproduce byte-identically; reseeding changes each hash", checked);
  return out;
}

Outcome ac5() {
  Outcome out;
  Simulation sim(load_scenario(scenario("baseline_economy.json")));
  std::size_t traders = 0;
  std::int64_t ticks = 0;
  sim.on_tick([&](const TickView& v) {
    ++ticks;
    for (const auto& [id, a] : v.state.accounts)
      if (id.rfind("trader-", 0) == 0 && a.reputation != 1.0)
        out.fail(fmt("tick %lld: %s reputation %.17g", (long long)v.tick, id.c_str(), a.reputation));
  });
  const auto trace = sim.run();
  for (const auto& [id, a] : trace.final_state.accounts)
    if (id.rfind("trader-", 0) == 0) {
      ++traders;
      if (a.reputation != 1.0) out.fail(id + " ended with reputation != 1.0");
    }
  if (traders == 0) out.fail("no capital_only agents in the baseline");
  if (out.ok) out.detail = fmt("%zu capital_only agents at reputation 1.0 for %lld ticks", traders, (long long)ticks);
  return out;
}

long double oracle_ratio(const LedgerState& s) {
  long double circulating = 0;
  for (const auto& [_, a] : s.accounts) circulating += a.ept.micro_units() + a.ep.micro_units();
  const long double supply = circulating + s.debt.ept_backing.micro_units();
  if (supply <= 0) return 0;
  return static_cast<long double>(s.debt.epd_outstanding.micro_units()) * s.debt.price / supply;
}

Outcome ac6() {
  Outcome out;
  {
    LedgerState s;
    create_account(s, "holder", TokenAmount::tokens(1000));
    convert_to_debt(s, "holder", TokenAmount::tokens(50));
    if (std::abs(debt_ratio(s) - 0.05) > 1e-12) out.fail("50 EPT conversion should give ratio 0.05");
    LedgerState t;
    create_account(t, "holder", TokenAmount::tokens(1000));
    try {
      convert_to_debt(t, "holder", TokenAmount::tokens(150));
      out.fail("150 EPT conversion was accepted");
    } catch (const Error& e) {
      if (e.code() != Errc::DebtCapExceeded) out.fail("150 EPT conversion raised the wrong error");
    }
  }
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::int64_t conversions = 0, rejections = 0;
  long double highest = 0;
  for (int seq = 0; seq < 1000 && out.ok; ++seq) {
    LedgerState s;
    const int n = 2 + static_cast<int>(gen() % 5);
    for (int i = 0; i < n; ++i)
      create_account(s, "acct" + std::to_string(i), TokenAmount::micro(static_cast<std::int64_t>(gen() % 10'000'000'000) + 1));
    for (int step = 0; step < 40; ++step) {
      s.debt.price = 0.5 + 1.5 * u(gen);
      const std::string who = "acct" + std::to_string(gen() % static_cast<unsigned>(n));
      const Account& a = s.account(who);
      switch (gen() % 4) {
        case 0:
        case 1: {
          const auto amount = TokenAmount::micro(static_cast<std::int64_t>(a.ept.micro_units() * u(gen) * 0.3));
          if (amount.is_zero()) break;
          const Digest before = state_hash(s);
          try {
            convert_to_debt(s, who, amount);
            ++conversions;
            const long double r = oracle_ratio(s);
            highest = std::max(highest, r);
            if (r > 0.10L + 1e-15L) out.fail(fmt("sequence %d: ratio %.12Lf after conversion", seq, r));
          } catch (const Error& e) {
            if (e.code() != Errc::DebtCapExceeded) throw;
            ++rejections;
            if (state_hash(s) != before) out.fail(fmt("sequence %d: rejected conversion mutated state", seq));
            // Reject only when the oracle also sees the cap broken.
            LedgerState trial = s;
            const long double p = trial.debt.price;
            const long double epd = std::floor(amount.micro_units() / p);
            const long double backed = std::min<long double>(amount.micro_units(), std::floor(epd * p));
            long double circulating = 0;
            for (const auto& [_, acct] : trial.accounts) circulating += acct.ept.micro_units() + acct.ep.micro_units();
            const long double supply = circulating - amount.micro_units() + trial.debt.ept_backing.micro_units() + backed;
            const long double r = (trial.debt.epd_outstanding.micro_units() + epd) * p / supply;
            if (r <= 0.10L - 1e-12L) out.fail(fmt("sequence %d: rejected a conversion at ratio %.12Lf", seq, r));
          }
          break;
        }
        case 2: {
          const auto amount = TokenAmount::micro(static_cast<std::int64_t>(a.epd.micro_units() * u(gen)));
          if (!amount.is_zero()) convert_from_debt(s, who, amount);
          break;
        }
        default: {
          const std::string to = "acct" + std::to_string(gen() % static_cast<unsigned>(n));
          const auto amount = TokenAmount::micro(static_cast<std::int64_t>(a.ept.micro_units() * u(gen)));
          if (to != who && !amount.is_zero()) transfer(s, who, to, amount);
          break;
        }
      }
    }
  }
  if (conversions == 0 || rejections == 0) out.fail("random sequences did not exercise both outcomes");
  if (out.ok)
    out.detail = fmt("%lld successful conversions (max ratio %.6Lf), %lld DebtCapExceeded", (long long)conversions,
                     highest, (long long)rejections);
  return out;
}

Outcome ac7() {
  Outcome out;
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.0, 1000.0);
  double worst_gini = 0.0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> v(1 + gen() % 1000);
    for (auto& x : v) x = (gen() % 5 == 0) ? 0.0 : u(gen);
    const double diff = std::abs(gini(v) - oracle::gini_pairwise(v));
    worst_gini = std::max(worst_gini, diff);
  }
  if (worst_gini > 1e-12) out.fail(fmt("gini deviates by %.3g", worst_gini));

  double worst_zipf = 0.0;
  for (double s : {0.8, 1.0, 1.2}) {
    std::vector<double> weights(1000);
    for (std::size_t r = 0; r < weights.size(); ++r) weights[r] = std::pow(static_cast<double>(r + 1), -s);
    std::discrete_distribution<std::size_t> zipf(weights.begin(), weights.end());
    std::vector<double> freq(weights.size(), 0.0);
    for (int k = 0; k < 5'000'000; ++k) freq[zipf(gen)] += 1.0;
    std::vector<double> observed;
    for (double f : freq)
      if (f > 0) observed.push_back(f);
    const double diff = std::abs(zipf_exponent(observed) - s);
    worst_zipf = std::max(worst_zipf, diff);
    if (diff > 0.05) out.fail(fmt("zipf s=%.1f recovered %.4f", s, zipf_exponent(observed)));
  }

  double worst_entropy = 0.0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<std::int64_t> c(1 + gen() % 50);
    for (auto& x : c) x = static_cast<std::int64_t>(gen() % 1000);
    worst_entropy = std::max(worst_entropy, std::abs(feed_entropy(c) - oracle::entropy_bits(c)));
  }
  if (worst_entropy > 1e-12) out.fail(fmt("feed_entropy deviates by %.3g", worst_entropy));
  if (out.ok)
    out.detail = fmt("gini max dev %.2g, zipf max dev %.4f, entropy max dev %.2g", worst_gini, worst_zipf, worst_entropy);
  return out;
}

struct GovernanceOutcome {
  std::vector<std::string> witnesses;
  std::vector<bool> enacted;
};

GovernanceOutcome governance_round(std::uint64_t seed, std::int64_t scale) {
  std::mt19937_64 gen(seed);
  LedgerState s;
  s.params.proposal_threshold = 0.3 + 0.4 * std::uniform_real_distribution<double>(0.0, 1.0)(gen);
  const int n = 3 + static_cast<int>(gen() % 12);
  WitnessApprovals approvals;
  for (int i = 0; i < n; ++i) {
    const std::string id = "voter" + std::to_string(i);
    const std::int64_t whole = 1 + static_cast<std::int64_t>(gen() % 5000);
    const std::int64_t ep = whole * 1'000'000 / (1 + static_cast<std::int64_t>(gen() % 3));
    create_account(s, id, TokenAmount{}, TokenAmount::micro(ep * scale));
    for (int k = 0; k < 1 + static_cast<int>(gen() % 3); ++k) approvals[id].insert("voter" + std::to_string(gen() % static_cast<unsigned>(n)));
  }
  GovernanceOutcome out;
  for (const auto& w : elect_witnesses(s, approvals, 1 + static_cast<std::int64_t>(gen() % 4)))
    out.witnesses.push_back(w.candidate);
  const char* params[] = {"lambda", "tau", "rep_alpha"};
  std::vector<std::int64_t> ids;
  for (const char* p : params) ids.push_back(submit_proposal(s, p, 0.5, 1));
  for (int i = 0; i < n; ++i)
    for (auto id : ids) {
      const auto r = gen() % 3;
      if (r < 2) vote_proposal(s, "voter" + std::to_string(i), id, r == 0 ? Vote::Yes : Vote::No, 0);
    }
  enact_due(s, 2);
  for (auto id : ids) out.enacted.push_back(s.governance.proposals.at(id).enacted);
  return out;
}

Outcome ac8() {
  Outcome out;
  int passed = 0, total = 0;
  for (std::uint64_t cfg = 0; cfg < 100; ++cfg) {
    const auto base = governance_round(1000 + cfg, 1);
    const auto scaled = governance_round(1000 + cfg, 10);
    if (base.witnesses != scaled.witnesses) out.fail(fmt("config %llu: witness set changed", (unsigned long long)cfg));
    if (base.enacted != scaled.enacted) out.fail(fmt("config %llu: proposal outcome changed", (unsigned long long)cfg));
    for (bool e : base.enacted) passed += e ? 1 : 0;
    total += static_cast<int>(base.enacted.size());
  }
  if (out.ok) out.detail = fmt("100 configs invariant under x10 stake (%d of %d proposals passed)", passed, total);
  return out;
}

Outcome ac9() {
  Outcome out;
  ProtocolParams p;
  p.base_mint = TokenAmount::tokens(1000);
  p.decay = 0.99;
  const TokenAmount m = mint_epoch(1, 0.5, 0.5, p);
  if (m.micro_units() != 247'500'000) out.fail(fmt("minted %lld micro", (long long)m.micro_units()));
  if (out.ok) out.detail = "mint_epoch(1000 EPT, 0.99, 1, 0.5, 0.5) = " + m.to_string() + " EPT (247500000 micro)";
  return out;
}

Outcome ac10() {
  Outcome out;
  std::mt19937_64 gen(10);
  int trials = 0;
  for (int i = 0; i < 1000; ++i) {
    LedgerState s;
    s.params.lifespan_ticks = 1 + static_cast<std::int64_t>(gen() % 30);
    create_account(s, "author", TokenAmount{});
    create_account(s, "voter", TokenAmount{}, TokenAmount::tokens(5));
    const Tick at = static_cast<Tick>(gen() % 100);
    const ContentId id = publish(s, "author", std::string("topic"), at);
    const Tick last = at + s.params.lifespan_ticks;
    try {
      engage(s, "voter", id, EngagementKind::Like, last);
    } catch (const Error& e) {
      out.fail(fmt("lifespan %lld: engagement at the last tick raised %s", (long long)s.params.lifespan_ticks, e.what()));
    }
    try {
      engage(s, "voter", id, EngagementKind::Share, last + 1);
      out.fail(fmt("lifespan %lld: engagement after the window accepted", (long long)s.params.lifespan_ticks));
    } catch (const Error& e) {
      if (e.code() != Errc::ExpiredContent) out.fail(std::string("wrong error after the window: ") + e.what());
    }
    ++trials;
  }
  if (out.ok) out.detail = fmt("%d randomized windows with lifespans 1-30", trials);
  return out;
}

}  // namespace

// With no arguments every criterion runs; otherwise only the numbered ones.
int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"anti-dominance", ac1}, {"entropy attainment", ac2}, {"exact conservation", ac3},
      {"determinism", ac4},    {"reputation non-purchasability", ac5}, {"debt-cap safety", ac6},
      {"oracle equivalence", ac7}, {"governance scale invariance", ac8}, {"mint formula", ac9},
      {"lifecycle boundary", ac10}};
  std::vector<bool> selected(criteria.size(), argc < 2);
  for (int a = 1; a < argc; ++a) {
    const long n = std::strtol(argv[a], nullptr, 10);
    if (n < 1 || n > static_cast<long>(criteria.size())) {
      std::fprintf(stderr, "unknown criterion '%s'\n", argv[a]);
      return 2;
    }
    selected[static_cast<std::size_t>(n - 1)] = true;
  }
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!selected[i]) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += o.ok ? 0 : 1;
    std::printf("AC%zu %s %s: %s\n", i + 1, o.ok ? "PASS" : "FAIL", criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
