#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rqa/date.hpp"

namespace rqa {

/// Dated price observations as ingested from a CSV file. Dates are strictly
/// increasing and prices finite and positive; validate() enforces both.
struct RawSeries {
    std::vector<Date> dates;
    std::vector<double> prices;
    std::string label;

    std::size_t size() const noexcept { return dates.size(); }
    void validate() const;
};

/// Uniformly indexed scalar series, the working representation throughout the
/// pipeline. When start_date is set, index i corresponds to start_date + i days.
struct TimeSeries {
    std::vector<double> values;
    std::optional<Date> start_date;
    std::string label;

    std::size_t size() const noexcept { return values.size(); }
};

} // namespace rqa
