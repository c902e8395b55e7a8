#pragma once

#include <cstdint>
#include <span>

namespace rqa {

enum class TrendDirection { Increasing, Decreasing, None };

const char* to_string(TrendDirection d) noexcept;

struct TrendResult {
    long long s = 0;              // Mann-Kendall statistic
    double tau = 0.0;             // Kendall rank correlation, tie-adjusted
    double variance = 0.0;        // autocorrelation-corrected Var(S)
    double z = 0.0;               // continuity-corrected normal score
    double p = 1.0;               // two-sided
    TrendDirection direction = TrendDirection::None;
    double n_effective_ratio = 1.0; // n*/n, the reciprocal of the variance
                                    // inflation factor; 1 when no correction applies
    std::size_t n = 0;
};

/// Kendall tau of the series against time. Ties in the values shrink the
/// denominator (tau-b); time indices are never tied.
double kendall_tau(std::span<const double> series);

long long kendall_s(std::span<const double> series);

/// Mann-Kendall trend test with the Hamed-Rao variance correction: the series
/// is detrended by its median pairwise slope, ranked, and the rank
/// autocorrelations that are individually significant (two-sided 5% per lag)
/// enter the correction sum. The correction factor never deflates the
/// variance below the classic value. Inputs must be finite; drop missing
/// values before calling.
TrendResult mann_kendall_modified(std::span<const double> series, double alpha = 0.05);

/// Classic (uncorrected) test, kept for calibration comparisons.
TrendResult mann_kendall_classic(std::span<const double> series, double alpha = 0.05);

} // namespace rqa
