#include "epistral/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include "json.hpp"
#include <ostream>
#include <sstream>

#include "epistral/error.hpp"

namespace epistral {

const char* const kCsvHeader =
    "tick,mean_feed_entropy,payout_gini,holdings_zipf_exponent,max_cluster_feed_share,minted,total_supply,debt_ratio";

namespace {

std::string real9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_real(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::ParseError, "line " + std::to_string(line) + ": bad number '" + s + "'");
  }
}

}  // namespace

TokenAmount parse_token_amount(const std::string& text) {
  std::string s = text;
  bool negative = false;
  if (!s.empty() && s[0] == '-') {
    negative = true;
    s.erase(0, 1);
  }
  const auto dot = s.find('.');
  std::string whole = s.substr(0, dot);
  std::string frac = dot == std::string::npos ? "" : s.substr(dot + 1);
  auto digits = [](const std::string& d) {
    return d.find_first_not_of("0123456789") == std::string::npos;
  };
  if (whole.empty() || !digits(whole) || !digits(frac) || frac.size() > 6)
    throw Error(Errc::ParseError, "bad token amount '" + text + "'");
  frac.resize(6, '0');
  const std::int64_t micro = std::stoll(whole) * TokenAmount::kMicroPerToken + std::stoll(frac);
  return TokenAmount::micro(negative ? -micro : micro);
}

std::string format_csv_row(const MetricRecord& r) {
  std::string row = std::to_string(r.tick);
  row += ',' + real9(r.mean_feed_entropy);
  row += ',' + real9(r.payout_gini);
  row += ',' + (r.holdings_zipf_exponent ? real9(*r.holdings_zipf_exponent) : std::string());
  row += ',' + real9(r.max_cluster_feed_share);
  row += ',' + r.minted.to_string();
  row += ',' + r.total_supply.to_string();
  row += ',' + real9(r.debt_ratio);
  return row;
}

void write_csv(std::ostream& out, const std::vector<MetricRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) out << format_csv_row(r) << '\n';
}

void write_jsonl(std::ostream& out, const std::vector<MetricRecord>& records,
                 const std::vector<std::vector<std::string>>& witnesses) {
  // Reals are emitted through the same 9-digit formatting as the CSV.
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    std::string line = "{\"tick\":" + std::to_string(r.tick);
    line += ",\"mean_feed_entropy\":" + real9(r.mean_feed_entropy);
    line += ",\"payout_gini\":" + real9(r.payout_gini);
    line += ",\"holdings_zipf_exponent\":" + (r.holdings_zipf_exponent ? real9(*r.holdings_zipf_exponent) : "null");
    line += ",\"max_cluster_feed_share\":" + real9(r.max_cluster_feed_share);
    line += ",\"minted\":\"" + r.minted.to_string() + "\"";
    line += ",\"total_supply\":\"" + r.total_supply.to_string() + "\"";
    line += ",\"debt_ratio\":" + real9(r.debt_ratio);
    if (i < witnesses.size()) line += ",\"witnesses\":" + nlohmann::json(witnesses[i]).dump();
    out << line << "}\n";
  }
}

std::vector<MetricRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw Error(Errc::ParseError, "line 1: unexpected header");
  std::vector<MetricRecord> records;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto c = split(line);
    if (c.size() != 8) throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": expected 8 columns");
    MetricRecord r;
    r.tick = static_cast<Tick>(parse_real(c[0], lineno));
    r.mean_feed_entropy = parse_real(c[1], lineno);
    r.payout_gini = parse_real(c[2], lineno);
    if (!c[3].empty()) r.holdings_zipf_exponent = parse_real(c[3], lineno);
    r.max_cluster_feed_share = parse_real(c[4], lineno);
    r.minted = parse_token_amount(c[5]);
    r.total_supply = parse_token_amount(c[6]);
    r.debt_ratio = parse_real(c[7], lineno);
    records.push_back(r);
  }
  return records;
}

void export_trace(const std::string& path, TraceFormat format, const std::vector<MetricRecord>& records,
                  const std::vector<std::vector<std::string>>& witnesses) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot open " + path);
  if (format == TraceFormat::Csv)
    write_csv(out, records);
  else
    write_jsonl(out, records, witnesses);
  out.flush();
  if (!out) throw Error(Errc::IoError, "write failed for " + path);
}

}  // namespace epistral
