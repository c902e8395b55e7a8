#include "rqa/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rqa/error.hpp"

namespace rqa {

namespace {

void require_finite(const TimeSeries& ts, const char* op) {
    for (double v : ts.values)
        if (!std::isfinite(v)) throw Error(Errc::InvalidInput, std::string(op) + ": non-finite value");
}

} // namespace

TimeSeries forward_fill(const RawSeries& raw, std::span<const Date> calendar) {
    if (raw.size() == 0) throw Error(Errc::EmptySeries, "no observations for " + raw.label);
    raw.validate();
    if (calendar.empty()) throw Error(Errc::InvalidInput, "empty calendar");
    if (calendar.front() != raw.dates.front()) {
        // Anything before the first observation would have to be invented.
        throw Error(Errc::LeadingGap, raw.label + ": calendar starts " +
                                          format_iso_date(calendar.front()) +
                                          " but first observation is " +
                                          format_iso_date(raw.dates.front()));
    }

    TimeSeries out;
    out.label = raw.label;
    out.start_date = calendar.front();
    out.values.reserve(calendar.size());

    std::size_t next = 0; // first raw entry not yet consumed
    double current = raw.prices.front();
    for (Date day : calendar) {
        while (next < raw.size() && raw.dates[next] <= day) current = raw.prices[next++];
        out.values.push_back(current);
    }
    return out;
}

TimeSeries detrend(const TimeSeries& ts, int degree) {
    const std::size_t n = ts.size();
    if (degree < 0) throw Error(Errc::InvalidInput, "negative polynomial degree");
    if (n <= static_cast<std::size_t>(degree) + 1)
        throw Error(Errc::InsufficientData, "series of length " + std::to_string(n) +
                                                " cannot support degree " + std::to_string(degree));
    require_finite(ts, "detrend");

    // Least squares via polynomials orthogonal over the sample positions
    // (three-term recurrence), positions normalized to [0, 1]. Stays
    // well-conditioned for any degree this tool accepts.
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(i) / static_cast<double>(n - 1);

    std::vector<double> prev(n, 0.0), cur(n, 1.0), fitted(n, 0.0);
    double norm_prev = 0.0;
    double norm_cur = static_cast<double>(n);
    for (int k = 0; k <= degree; ++k) {
        double proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += ts.values[i] * cur[i];
        const double coeff = proj / norm_cur;
        for (std::size_t i = 0; i < n; ++i) fitted[i] += coeff * cur[i];
        if (k == degree) break;

        double a = 0.0;
        for (std::size_t i = 0; i < n; ++i) a += t[i] * cur[i] * cur[i];
        a /= norm_cur;
        const double b = (k == 0) ? 0.0 : norm_cur / norm_prev;

        std::vector<double> next(n);
        for (std::size_t i = 0; i < n; ++i) next[i] = (t[i] - a) * cur[i] - b * prev[i];
        prev.swap(cur);
        cur.swap(next);
        norm_prev = norm_cur;
        norm_cur = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm_cur += cur[i] * cur[i];
    }

    TimeSeries out;
    out.label = ts.label;
    out.start_date = ts.start_date;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = ts.values[i] - fitted[i];
    return out;
}

TimeSeries uniform_deviate(const TimeSeries& ts) {
    const std::size_t n = ts.size();
    if (n < 2) throw Error(Errc::InsufficientData, "uniform deviate needs at least 2 values");
    require_finite(ts, "uniform_deviate");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return ts.values[a] < ts.values[b]; });

    TimeSeries out;
    out.label = ts.label;
    out.start_date = ts.start_date;
    out.values.resize(n);
    // Divide rather than multiply by a reciprocal: sorted output must equal
    // k/(N+1) to the last bit.
    for (std::size_t rank = 0; rank < n; ++rank)
        out.values[order[rank]] = static_cast<double>(rank + 1) / static_cast<double>(n + 1);
    return out;
}

} // namespace rqa
