#pragma once

#include <span>

#include "rqa/series.hpp"

namespace rqa {

/// Expands a dated series onto the given calendar (sorted, unique days).
/// Days without an observation carry the most recent prior value. The first
/// calendar day must itself be observed; anything earlier would have to be
/// back-filled, which fabricates data.
TimeSeries forward_fill(const RawSeries& raw, std::span<const Date> calendar);

/// Subtracts the least-squares polynomial of the given degree, fitted over
/// index positions normalized to [0, 1].
TimeSeries detrend(const TimeSeries& ts, int degree);

/// Rank transform: value i becomes rank(i)/(N+1) with 1-based ascending ranks
/// and ties broken by original index, so outputs lie strictly inside (0, 1).
TimeSeries uniform_deviate(const TimeSeries& ts);

} // namespace rqa
