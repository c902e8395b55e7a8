#pragma once

#include <string>

#include "rqa/series.hpp"

namespace rqa {

/// Reads a two-column `date,close` CSV with a mandatory header row.
/// Dates must be ISO-8601 and strictly increasing, prices finite and > 0.
/// Any offending row aborts the parse with an Error carrying file:line.
RawSeries read_price_csv(const std::string& path, std::string label);

} // namespace rqa
