#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "json.hpp"

#include "enclose/search.hpp"

namespace enclose {

enum class ReportFormat { json, csv };

ReportFormat parse_report_format(std::string_view text);

// Shortest round-trip decimal form; non-finite values become "inf", "-inf", "nan".
std::string format_double(double x);

nlohmann::json to_json(const SolverConfig& config, const SearchResult& result);

// Same document with wall_time_s and config.threads removed, for comparing runs.
nlohmann::json deterministic_view(nlohmann::json report);

void write_json(std::ostream& out, const SolverConfig& config, const SearchResult& result);

// One key=value metadata row, a header row, then one row per region:
// lb, x1_lo, x1_hi, ..., xn_lo, xn_hi.
void write_csv(std::ostream& out, const SolverConfig& config, const SearchResult& result);

void write_report(std::ostream& out, ReportFormat format, const SolverConfig& config,
                  const SearchResult& result);

} // namespace enclose
