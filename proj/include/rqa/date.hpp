#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rqa {

/// Calendar day, stored as days since the Unix epoch.
using Date = std::chrono::sys_days;

/// Parses a strict ISO-8601 calendar date (YYYY-MM-DD). Returns nullopt on
/// malformed input or out-of-range month/day combinations.
std::optional<Date> parse_iso_date(std::string_view text);

std::string format_iso_date(Date day);

/// Every calendar day in [first, last].
std::vector<Date> daily_calendar(Date first, Date last);

/// Monday-Friday days in [first, last].
std::vector<Date> weekday_calendar(Date first, Date last);

} // namespace rqa
