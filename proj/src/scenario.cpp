#include "epistral/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "epistral/error.hpp"
#include "json.hpp"

namespace epistral {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ValidationError(where.empty() ? key : where + "." + key, "unknown field");
  }
}

const json& require_object(const json& j, const std::string& field) {
  if (!j.is_object()) throw ValidationError(field, "must be an object");
  return j;
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ValidationError(field, "must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ValidationError(field, "must be finite");
  return v;
}

std::int64_t integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ValidationError(field, "must be an integer");
  return j.get<std::int64_t>();
}

std::string text(const json& j, const std::string& field) {
  if (!j.is_string()) throw ValidationError(field, "must be a string");
  return j.get<std::string>();
}

TokenAmount tokens(const json& j, const std::string& field) {
  const double v = number(j, field);
  if (v < 0.0) throw ValidationError(field, "must be >= 0");
  return TokenAmount::from_tokens(v);
}

std::array<double, kEngagementKinds> kind_table(const json& j, const std::string& field, bool zero_fill) {
  require_object(j, field);
  reject_unknown(j, field, {"view", "like", "comment", "share"});
  std::array<double, kEngagementKinds> out{};
  if (!zero_fill) out = ProtocolParams{}.kind_factors;
  for (const auto& [key, val] : j.items()) {
    const auto kind = parse_kind(key);
    out[static_cast<std::size_t>(*kind)] = number(val, field + "." + key);
  }
  return out;
}

std::array<double, kEngagementKinds> default_kind_mix(Archetype a) {
  switch (a) {
    case Archetype::Consumer: return {0.70, 0.25, 0.03, 0.02};
    case Archetype::Curator: return {0.0, 0.5, 0.3, 0.2};
    case Archetype::BotFarm: return {0.0, 1.0, 0.0, 0.0};
    default: return {1.0, 0.0, 0.0, 0.0};
  }
}

Archetype parse_archetype(const std::string& s, const std::string& field) {
  if (s == "creator") return Archetype::Creator;
  if (s == "consumer") return Archetype::Consumer;
  if (s == "curator") return Archetype::Curator;
  if (s == "bot_farm") return Archetype::BotFarm;
  if (s == "capital_only") return Archetype::CapitalOnly;
  throw ValidationError(field, "must be one of creator, consumer, curator, bot_farm, capital_only");
}

ProtocolParams parse_params(const json& j) {
  require_object(j, "params");
  ProtocolParams p;
  for (const auto& [key, val] : j.items()) {
    const std::string field = "params." + key;
    if (key == "kind_factors") {
      p.kind_factors = kind_table(val, field, false);
    } else if (is_governable(key)) {
      if (key == "lifespan_ticks" || key == "feed_size" || key == "witness_count") integer(val, field);
      const double v = number(val, field);
      if (auto bad = check_parameter(key, v)) throw ValidationError(key, *bad);
      set_parameter(p, key, v);
    } else {
      throw ValidationError(field, "unknown field");
    }
  }
  return p;
}

AgentSpec parse_agent(const json& j, const std::string& where) {
  require_object(j, where);
  reject_unknown(j, where,
                 {"archetype", "name", "count", "initial_ept", "initial_ep", "posts_per_tick", "engagement_rate",
                  "votes_per_tick", "ops_per_tick", "target_cluster", "embedding_center", "embedding_spread",
                  "kind_mix", "vote_bias", "witness_candidate"});
  if (!j.contains("archetype")) throw ValidationError(where + ".archetype", "is required");
  AgentSpec a;
  a.archetype = parse_archetype(text(j["archetype"], where + ".archetype"), where + ".archetype");
  a.name = std::string(archetype_name(a.archetype));
  a.kind_mix = default_kind_mix(a.archetype);
  for (const auto& [key, val] : j.items()) {
    const std::string field = where + "." + key;
    if (key == "name") a.name = text(val, field);
    else if (key == "count") a.count = integer(val, field);
    else if (key == "initial_ept") a.initial_ept = tokens(val, field);
    else if (key == "initial_ep") a.initial_ep = tokens(val, field);
    else if (key == "posts_per_tick") a.posts_per_tick = number(val, field);
    else if (key == "engagement_rate") a.engagement_rate = number(val, field);
    else if (key == "votes_per_tick") a.votes_per_tick = number(val, field);
    else if (key == "ops_per_tick") a.ops_per_tick = number(val, field);
    else if (key == "target_cluster") a.target_cluster = text(val, field);
    else if (key == "embedding_spread") a.embedding_spread = number(val, field);
    else if (key == "kind_mix") a.kind_mix = kind_table(val, field, true);
    else if (key == "vote_bias") a.vote_bias = number(val, field);
    else if (key == "witness_candidate") {
      if (!val.is_boolean()) throw ValidationError(field, "must be a boolean");
      a.witness_candidate = val.get<bool>();
    } else if (key == "embedding_center") {
      if (!val.is_array()) throw ValidationError(field, "must be an array of numbers");
      std::vector<double> center;
      for (std::size_t i = 0; i < val.size(); ++i) center.push_back(number(val[i], field + "[" + std::to_string(i) + "]"));
      a.embedding_center = std::move(center);
    }
  }
  return a;
}

void check_range(double v, double lo, double hi, const std::string& field) {
  if (!(v >= lo && v <= hi))
    throw ValidationError(field, "must be in [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
}

}  // namespace

std::string_view archetype_name(Archetype a) {
  switch (a) {
    case Archetype::Creator: return "creator";
    case Archetype::Consumer: return "consumer";
    case Archetype::Curator: return "curator";
    case Archetype::BotFarm: return "bot_farm";
    case Archetype::CapitalOnly: return "capital_only";
  }
  return "?";
}

double ScenarioConfig::price_at(std::int64_t tick) const {
  if (price_path.empty()) return 1.0;
  const auto i = static_cast<std::size_t>(std::clamp<std::int64_t>(tick, 0, static_cast<std::int64_t>(price_path.size()) - 1));
  return price_path[i];
}

void validate(const ScenarioConfig& c) {
  if (c.ticks < 0) throw ValidationError("ticks", "must be >= 0");
  if (c.embedding_dim < 1) throw ValidationError("embedding_dim", "must be >= 1");
  c.params.validate();
  if (c.price_path.empty()) throw ValidationError("price_path", "must not be empty");
  for (std::size_t i = 0; i < c.price_path.size(); ++i)
    if (!(c.price_path[i] > 0.0) || !std::isfinite(c.price_path[i]))
      throw ValidationError("price_path[" + std::to_string(i) + "]", "must be > 0");

  std::set<std::string> names;
  for (std::size_t i = 0; i < c.agents.size(); ++i) {
    const auto& a = c.agents[i];
    const std::string f = "agents[" + std::to_string(i) + "]";
    if (a.count < 0) throw ValidationError(f + ".count", "must be >= 0");
    if (a.name.empty() || a.name.find_first_of(" ,\"") != std::string::npos)
      throw ValidationError(f + ".name", "must be a non-empty identifier");
    if (!names.insert(a.name).second) throw ValidationError(f + ".name", "must be unique");
    for (auto [v, key] : {std::pair{a.posts_per_tick, "posts_per_tick"}, {a.votes_per_tick, "votes_per_tick"},
                          {a.ops_per_tick, "ops_per_tick"}, {a.embedding_spread, "embedding_spread"}})
      if (v < 0.0) throw ValidationError(f + "." + key, "must be >= 0");
    check_range(a.engagement_rate, 0.0, 1.0, f + ".engagement_rate");
    check_range(a.vote_bias, 0.0, 1.0, f + ".vote_bias");
    double mix = 0.0;
    for (double m : a.kind_mix) {
      if (m < 0.0) throw ValidationError(f + ".kind_mix", "weights must be >= 0");
      mix += m;
    }
    if (!(mix > 0.0)) throw ValidationError(f + ".kind_mix", "weights must not all be zero");
    if (a.embedding_center && static_cast<std::int64_t>(a.embedding_center->size()) != c.embedding_dim)
      throw ValidationError(f + ".embedding_center", "length must equal embedding_dim");
    if (a.archetype == Archetype::BotFarm && !a.target_cluster && !a.embedding_center)
      throw ValidationError(f + ".target_cluster", "bot_farm must name a target cluster or embedding center");
  }

  std::set<std::string> ids;
  for (std::size_t i = 0; i < c.initial_accounts.size(); ++i) {
    const auto& acct = c.initial_accounts[i];
    const std::string f = "initial_accounts[" + std::to_string(i) + "]";
    if (acct.id.empty()) throw ValidationError(f + ".id", "must not be empty");
    if (!ids.insert(acct.id).second) throw ValidationError(f + ".id", "must be unique");
    for (const auto& n : names)
      if (acct.id.rfind(n + "-", 0) == 0) throw ValidationError(f + ".id", "collides with agent prefix " + n);
  }

  for (std::size_t i = 0; i < c.proposals.size(); ++i) {
    const auto& p = c.proposals[i];
    const std::string f = "proposals[" + std::to_string(i) + "]";
    if (p.tick < 0) throw ValidationError(f + ".tick", "must be >= 0");
    if (p.voting_period < 0) throw ValidationError(f + ".voting_period", "must be >= 0");
    if (!is_governable(p.parameter)) throw ValidationError(f + ".parameter", "not a governable parameter");
    if (auto bad = check_parameter(p.parameter, p.value)) throw ValidationError(f + ".value", *bad);
  }
}

ScenarioConfig parse_scenario(const std::string& source) {
  json j;
  try {
    j = json::parse(source);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < source.size(); ++i) {
      if (source[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(Errc::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  require_object(j, "scenario");
  reject_unknown(j, "", {"name", "seed", "ticks", "embedding_dim", "params", "agents", "price_path",
                         "initial_accounts", "proposals"});
  ScenarioConfig c;
  if (!j.contains("seed")) throw ValidationError("seed", "is required");
  if (!j.contains("ticks")) throw ValidationError("ticks", "is required");
  if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<std::int64_t>() >= 0))
    throw ValidationError("seed", "must be a non-negative 64-bit integer");
  c.seed = j["seed"].get<std::uint64_t>();
  c.ticks = integer(j["ticks"], "ticks");
  if (j.contains("name")) c.name = text(j["name"], "name");
  if (j.contains("embedding_dim")) c.embedding_dim = integer(j["embedding_dim"], "embedding_dim");
  if (j.contains("params")) c.params = parse_params(j["params"]);
  if (j.contains("agents")) {
    if (!j["agents"].is_array()) throw ValidationError("agents", "must be an array");
    for (std::size_t i = 0; i < j["agents"].size(); ++i)
      c.agents.push_back(parse_agent(j["agents"][i], "agents[" + std::to_string(i) + "]"));
  }
  if (j.contains("price_path")) {
    const auto& pp = j["price_path"];
    if (!pp.is_array()) throw ValidationError("price_path", "must be an array");
    c.price_path.clear();
    for (std::size_t i = 0; i < pp.size(); ++i) c.price_path.push_back(number(pp[i], "price_path[" + std::to_string(i) + "]"));
  }
  if (j.contains("initial_accounts")) {
    const auto& arr = j["initial_accounts"];
    if (!arr.is_array()) throw ValidationError("initial_accounts", "must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string f = "initial_accounts[" + std::to_string(i) + "]";
      require_object(arr[i], f);
      reject_unknown(arr[i], f, {"id", "ept", "ep"});
      if (!arr[i].contains("id")) throw ValidationError(f + ".id", "is required");
      InitialAccount acct{text(arr[i]["id"], f + ".id"), {}, {}};
      if (arr[i].contains("ept")) acct.ept = tokens(arr[i]["ept"], f + ".ept");
      if (arr[i].contains("ep")) acct.ep = tokens(arr[i]["ep"], f + ".ep");
      c.initial_accounts.push_back(std::move(acct));
    }
  }
  if (j.contains("proposals")) {
    const auto& arr = j["proposals"];
    if (!arr.is_array()) throw ValidationError("proposals", "must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string f = "proposals[" + std::to_string(i) + "]";
      require_object(arr[i], f);
      reject_unknown(arr[i], f, {"tick", "parameter", "value", "voting_period"});
      for (const char* req : {"tick", "parameter", "value"})
        if (!arr[i].contains(req)) throw ValidationError(f + "." + req, "is required");
      ScheduledProposal p;
      p.tick = integer(arr[i]["tick"], f + ".tick");
      p.parameter = text(arr[i]["parameter"], f + ".parameter");
      p.value = number(arr[i]["value"], f + ".value");
      if (arr[i].contains("voting_period")) p.voting_period = integer(arr[i]["voting_period"], f + ".voting_period");
      c.proposals.push_back(std::move(p));
    }
  }
  validate(c);
  return c;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

void apply_scale(ScenarioConfig& config, double factor) {
  if (!(factor >= 1.0) || !std::isfinite(factor)) throw ValidationError("scale", "must be >= 1");
  for (auto& a : config.agents) {
    if (a.count <= 0) continue;
    a.count = std::max<std::int64_t>(1, std::llround(static_cast<double>(a.count) / factor));
  }
}

}  // namespace epistral
