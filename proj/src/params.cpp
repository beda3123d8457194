#include "epistral/params.hpp"

#include <algorithm>
#include <cmath>

#include "epistral/error.hpp"

namespace epistral {

namespace {

constexpr std::array<std::string_view, 13> kGovernable{
    "lifespan_ticks", "feed_size", "cap_frac",     "target_entropy", "lambda",
    "base_mint",      "decay",     "creator_split", "debt_ratio_cap", "tau",
    "rep_alpha",      "witness_count", "proposal_threshold"};

bool is_integral(double v) { return std::isfinite(v) && std::floor(v) == v; }

}  // namespace

std::string_view kind_name(EngagementKind kind) {
  switch (kind) {
    case EngagementKind::View: return "view";
    case EngagementKind::Like: return "like";
    case EngagementKind::Comment: return "comment";
    case EngagementKind::Share: return "share";
  }
  return "?";
}

std::optional<EngagementKind> parse_kind(std::string_view name) {
  if (name == "view") return EngagementKind::View;
  if (name == "like") return EngagementKind::Like;
  if (name == "comment") return EngagementKind::Comment;
  if (name == "share") return EngagementKind::Share;
  return std::nullopt;
}

std::int64_t ProtocolParams::cluster_cap() const {
  // Small epsilon guard so that e.g. 0.2 * 20 stays 4 rather than 5.
  const double raw = cap_frac * static_cast<double>(feed_size);
  const double nearest = std::round(raw);
  if (std::abs(raw - nearest) < 1e-9) return static_cast<std::int64_t>(nearest);
  return static_cast<std::int64_t>(std::ceil(raw));
}

std::span<const std::string_view> governable_parameters() { return kGovernable; }

bool is_governable(std::string_view name) {
  return std::find(kGovernable.begin(), kGovernable.end(), name) != kGovernable.end();
}

std::optional<std::string> check_parameter(std::string_view name, double v) {
  if (!std::isfinite(v)) return "must be finite";
  if (name == "lifespan_ticks" || name == "feed_size" || name == "witness_count") {
    if (!is_integral(v) || v < 1) return "must be an integer >= 1";
  } else if (name == "cap_frac" || name == "decay" || name == "tau") {
    if (!(v > 0.0 && v <= 1.0)) return "must be in (0,1]";
  } else if (name == "lambda" || name == "creator_split" || name == "debt_ratio_cap") {
    if (!(v >= 0.0 && v <= 1.0)) return "must be in [0,1]";
  } else if (name == "proposal_threshold") {
    if (!(v >= 0.0 && v < 1.0)) return "must be in [0,1)";
  } else if (name == "target_entropy" || name == "rep_alpha" || name == "base_mint") {
    if (v < 0.0) return "must be >= 0";
  } else {
    return "unknown parameter";
  }
  return std::nullopt;
}

double get_parameter(const ProtocolParams& p, std::string_view name) {
  if (name == "lifespan_ticks") return static_cast<double>(p.lifespan_ticks);
  if (name == "feed_size") return static_cast<double>(p.feed_size);
  if (name == "cap_frac") return p.cap_frac;
  if (name == "target_entropy") return p.target_entropy;
  if (name == "lambda") return p.lambda;
  if (name == "base_mint") return p.base_mint.as_tokens();
  if (name == "decay") return p.decay;
  if (name == "creator_split") return p.creator_split;
  if (name == "debt_ratio_cap") return p.debt_ratio_cap;
  if (name == "tau") return p.tau;
  if (name == "rep_alpha") return p.rep_alpha;
  if (name == "witness_count") return static_cast<double>(p.witness_count);
  if (name == "proposal_threshold") return p.proposal_threshold;
  throw Error(Errc::InvalidParameter, std::string(name));
}

void set_parameter(ProtocolParams& p, std::string_view name, double v) {
  if (auto bad = check_parameter(name, v)) throw ValidationError(std::string(name), *bad);
  if (name == "lifespan_ticks") p.lifespan_ticks = std::llround(v);
  else if (name == "feed_size") p.feed_size = std::llround(v);
  else if (name == "cap_frac") p.cap_frac = v;
  else if (name == "target_entropy") p.target_entropy = v;
  else if (name == "lambda") p.lambda = v;
  else if (name == "base_mint") p.base_mint = TokenAmount::from_tokens(v);
  else if (name == "decay") p.decay = v;
  else if (name == "creator_split") p.creator_split = v;
  else if (name == "debt_ratio_cap") p.debt_ratio_cap = v;
  else if (name == "tau") p.tau = v;
  else if (name == "rep_alpha") p.rep_alpha = v;
  else if (name == "witness_count") p.witness_count = std::llround(v);
  else if (name == "proposal_threshold") p.proposal_threshold = v;
}

void ProtocolParams::validate() const {
  for (auto name : kGovernable) {
    if (auto bad = check_parameter(name, get_parameter(*this, name)))
      throw ValidationError(std::string(name), *bad);
  }
  if (base_mint.micro_units() < 0) throw ValidationError("base_mint", "must be >= 0");
  for (std::size_t k = 0; k < kEngagementKinds; ++k) {
    if (!(kind_factors[k] >= 0.0) || !std::isfinite(kind_factors[k]))
      throw ValidationError("kind_factors", "must be finite and >= 0");
  }
}

}  // namespace epistral
