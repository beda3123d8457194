#include "epistral/state_hash.hpp"

#include <openssl/evp.h>

#include <bit>
#include <cstring>
#include <memory>
#include <stdexcept>
#include <vector>

namespace epistral {

namespace {

// Canonical byte encoder: fixed-width little-endian integers, IEEE-754 bit
// patterns for reals, length-prefixed strings, count-prefixed sequences.
class Encoder {
 public:
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v == 0.0 ? 0.0 : v)); }
  void tokens(TokenAmount t) { i64(t.micro_units()); }
  void str(const std::string& s) {
    u64(s.size());
    buf_.insert(buf_.end(), s.begin(), s.end());
  }
  void tag(const char* t) { str(t); }
  const std::vector<std::uint8_t>& bytes() const { return buf_; }

 private:
  std::vector<std::uint8_t> buf_;
};

void encode(Encoder& e, const ProtocolParams& p) {
  e.tag("params");
  e.i64(p.lifespan_ticks);
  e.i64(p.feed_size);
  e.f64(p.cap_frac);
  e.f64(p.target_entropy);
  e.f64(p.lambda);
  e.tokens(p.base_mint);
  e.f64(p.decay);
  e.f64(p.creator_split);
  e.f64(p.debt_ratio_cap);
  e.f64(p.tau);
  e.f64(p.rep_alpha);
  e.i64(p.witness_count);
  e.f64(p.proposal_threshold);
  for (double f : p.kind_factors) e.f64(f);
}

void encode(Encoder& e, const Embedding& emb) {
  e.u64(emb.dimension());
  for (double v : emb.values()) e.f64(v);
}

void encode(Encoder& e, const ContentRegistry& reg) {
  e.tag("content");
  e.i64(reg.next_id);
  e.u64(reg.live.size());
  for (const auto& [id, item] : reg.live) {
    e.i64(id);
    e.str(item.author);
    encode(e, item.embedding);
    e.u8(item.label ? 1 : 0);
    if (item.label) e.str(*item.label);
    e.i64(item.cluster);
    e.i64(item.published_at);
    e.i64(item.expires_at);
    e.f64(item.total_weight);
    e.u64(item.engagements.size());
    for (const auto& g : item.engagements) {
      e.str(g.voter);
      e.u8(static_cast<std::uint8_t>(g.kind));
      e.i64(g.tick);
      e.f64(g.weight);
    }
  }
  e.tag("clusters");
  e.u64(reg.clusters.cluster_count());
  e.u64(reg.clusters.leaders().size());
  for (const auto& l : reg.clusters.leaders()) {
    e.i64(l.cluster);
    e.i64(l.content);
    encode(e, l.embedding);
  }
  e.u64(reg.clusters.labels().size());
  for (const auto& [label, id] : reg.clusters.labels()) {
    e.str(label);
    e.i64(id);
  }
}

void encode(Encoder& e, const GovernanceBook& g) {
  e.tag("governance");
  e.i64(g.next_id);
  e.u64(g.proposals.size());
  for (const auto& [id, p] : g.proposals) {
    e.i64(id);
    e.str(p.parameter);
    e.f64(p.new_value);
    e.i64(p.deadline);
    e.u8(p.closed ? 1 : 0);
    e.u8(p.enacted ? 1 : 0);
    e.tokens(p.yes_stake);
    e.tokens(p.no_stake);
    e.u64(p.votes.size());
    for (const auto& [voter, v] : p.votes) {
      e.str(voter);
      e.u8(static_cast<std::uint8_t>(v));
    }
  }
}

}  // namespace

Digest state_hash(const LedgerState& s) {
  Encoder e;
  e.tag("epistral-state-v1");
  e.i64(s.epoch);
  e.tokens(s.initial_supply);
  e.tokens(s.total_minted);
  e.tokens(s.escrow);
  e.tag("accounts");
  e.u64(s.accounts.size());
  for (const auto& [id, a] : s.accounts) {
    e.str(id);
    e.tokens(a.ept);
    e.tokens(a.ep);
    e.tokens(a.epd);
    e.f64(a.reputation);
  }
  encode(e, s.params);
  e.tag("debt");
  e.tokens(s.debt.epd_outstanding);
  e.tokens(s.debt.ept_backing);
  e.tokens(s.debt.rounding_burned);
  e.tokens(s.debt.revaluation_minted);
  e.f64(s.debt.price);
  encode(e, s.content);
  encode(e, s.governance);

  Digest out{};
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), e.bytes().data(), e.bytes().size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), out.data(), &len) != 1 || len != out.size())
    throw std::runtime_error("sha256 failed");
  return out;
}

std::string to_hex(const Digest& digest) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string s;
  s.reserve(digest.size() * 2);
  for (auto b : digest) {
    s.push_back(kHex[b >> 4]);
    s.push_back(kHex[b & 0xF]);
  }
  return s;
}

}  // namespace epistral
