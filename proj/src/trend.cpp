#include "rqa/trend.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rqa/error.hpp"

namespace rqa {

const char* to_string(TrendDirection d) noexcept {
    switch (d) {
        case TrendDirection::Increasing: return "increasing";
        case TrendDirection::Decreasing: return "decreasing";
        case TrendDirection::None: return "none";
    }
    return "?";
}

namespace {

constexpr double kZ975 = 1.959963984540054; // two-sided 5% normal quantile

void check_series(std::span<const double> x) {
    if (x.size() < 3) throw Error(Errc::InsufficientData, "trend test needs at least 3 values");
    bool any_distinct = false;
    for (double v : x) {
        if (!std::isfinite(v)) throw Error(Errc::InvalidInput, "non-finite value in trend input");
        if (v != x[0]) any_distinct = true;
    }
    if (!any_distinct) throw Error(Errc::DegenerateSeries, "all values equal; no rank trend exists");
}

// Sum over tied-value groups of f(group size).
template <typename F>
double tie_sum(std::span<const double> x, F f) {
    std::vector<double> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    double total = 0.0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i);
        if (t > 1) total += f(t);
        i = j;
    }
    return total;
}

double variance_no_correction(std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    const double ties = tie_sum(x, [](double t) { return t * (t - 1) * (2 * t + 5); });
    return (n * (n - 1) * (2 * n + 5) - ties) / 18.0;
}

double median_pairwise_slope(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<double> slopes;
    slopes.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            slopes.push_back((x[j] - x[i]) / static_cast<double>(j - i));
    const std::size_t mid = slopes.size() / 2;
    std::nth_element(slopes.begin(), slopes.begin() + mid, slopes.end());
    double median = slopes[mid];
    if (slopes.size() % 2 == 0) {
        const double below = *std::max_element(slopes.begin(), slopes.begin() + mid);
        median = 0.5 * (below + median);
    }
    return median;
}

std::vector<double> average_ranks(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && x[order[j]] == x[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j + 1); // 1-based mean rank of the group
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
        i = j;
    }
    return ranks;
}

// Hamed-Rao variance inflation: detrend by the median pairwise slope, rank,
// and let only individually significant rank autocorrelations into the sum.
// Never deflates below 1.
double correction_factor(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 4) return 1.0;
    const double slope = median_pairwise_slope(x);
    std::vector<double> detrended(n);
    for (std::size_t i = 0; i < n; ++i) detrended[i] = x[i] - slope * static_cast<double>(i);

    std::vector<double> ranks = average_ranks(detrended);
    double mean = 0.0;
    for (double r : ranks) mean += r;
    mean /= static_cast<double>(n);
    for (double& r : ranks) r -= mean;
    double denom = 0.0;
    for (double r : ranks) denom += r * r;
    if (denom == 0.0) return 1.0;

    const double threshold = kZ975 / std::sqrt(static_cast<double>(n));
    const double nd = static_cast<double>(n);
    double sum = 0.0;
    for (std::size_t k = 1; k + 3 <= n; ++k) {
        double num = 0.0;
        for (std::size_t i = 0; i + k < n; ++i) num += ranks[i] * ranks[i + k];
        const double rho = num / denom;
        if (std::fabs(rho) > threshold)
            sum += (nd - k) * (nd - k - 1) * (nd - k - 2) * rho;
    }
    const double factor = 1.0 + 2.0 / (nd * (nd - 1) * (nd - 2)) * sum;
    return std::max(factor, 1.0);
}

TrendResult finish(std::span<const double> x, double alpha, double factor) {
    TrendResult r;
    r.n = x.size();
    r.s = kendall_s(x);
    r.tau = kendall_tau(x);
    r.variance = variance_no_correction(x) * factor;
    r.n_effective_ratio = 1.0 / factor;
    if (r.s > 0)
        r.z = (static_cast<double>(r.s) - 1.0) / std::sqrt(r.variance);
    else if (r.s < 0)
        r.z = (static_cast<double>(r.s) + 1.0) / std::sqrt(r.variance);
    else
        r.z = 0.0;
    r.p = std::erfc(std::fabs(r.z) / std::sqrt(2.0));
    if (r.p < alpha)
        r.direction = r.s > 0 ? TrendDirection::Increasing : TrendDirection::Decreasing;
    else
        r.direction = TrendDirection::None;
    return r;
}

} // namespace

long long kendall_s(std::span<const double> series) {
    long long s = 0;
    for (std::size_t i = 0; i + 1 < series.size(); ++i)
        for (std::size_t j = i + 1; j < series.size(); ++j) {
            if (series[j] > series[i])
                ++s;
            else if (series[j] < series[i])
                --s;
        }
    return s;
}

double kendall_tau(std::span<const double> series) {
    check_series(series);
    const double n = static_cast<double>(series.size());
    const double pairs = n * (n - 1) / 2.0;
    const double tied_pairs = tie_sum(series, [](double t) { return t * (t - 1) / 2.0; });
    const long long s = kendall_s(series);
    return static_cast<double>(s) / std::sqrt(pairs * (pairs - tied_pairs));
}

TrendResult mann_kendall_modified(std::span<const double> series, double alpha) {
    check_series(series);
    return finish(series, alpha, correction_factor(series));
}

TrendResult mann_kendall_classic(std::span<const double> series, double alpha) {
    check_series(series);
    return finish(series, alpha, 1.0);
}

} // namespace rqa
