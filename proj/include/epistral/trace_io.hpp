#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "epistral/metrics.hpp"

namespace epistral {

enum class TraceFormat { Csv, Jsonl };

// Column order of the CSV trace.
extern const char* const kCsvHeader;

// Reals use 9 significant digits; token columns are exact decimal tokens;
// an absent Zipf exponent is an empty cell (null in JSON lines).
std::string format_csv_row(const MetricRecord& record);
void write_csv(std::ostream& out, const std::vector<MetricRecord>& records);
void write_jsonl(std::ostream& out, const std::vector<MetricRecord>& records,
                 const std::vector<std::vector<std::string>>& witnesses = {});

// Parses a CSV trace produced by write_csv; throws ParseError.
std::vector<MetricRecord> read_csv(std::istream& in);

// Writes the trace file; throws IoError.
void export_trace(const std::string& path, TraceFormat format, const std::vector<MetricRecord>& records,
                  const std::vector<std::vector<std::string>>& witnesses = {});

TokenAmount parse_token_amount(const std::string& text);

}  // namespace epistral
