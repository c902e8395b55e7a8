#pragma once

#include <span>
#include <vector>

#include "rqa/series.hpp"

namespace rqa {

struct EmbeddingParams {
    int dimension = 1; // m
    int delay = 1;     // tau, in time steps
};

/// Delay-reconstructed trajectory: point i = (x_i, x_{i+tau}, ..., x_{i+(m-1)tau}).
/// Coordinates are stored point-major.
struct EmbeddedTrajectory {
    std::vector<double> coords;
    std::size_t count = 0;
    EmbeddingParams params;

    std::span<const double> point(std::size_t i) const {
        return {coords.data() + i * static_cast<std::size_t>(params.dimension),
                static_cast<std::size_t>(params.dimension)};
    }
    int dimension() const noexcept { return params.dimension; }
};

/// Sample autocorrelation for lags 0..max_lag, mean-removed and normalized so
/// that acf[0] == 1.
std::vector<double> autocorrelation(const TimeSeries& ts, int max_lag);

/// Smallest lag >= 1 at which the ACF has fallen to 1/e. Throws NoCrossing if
/// that never happens within max_lag.
int estimate_delay(const TimeSeries& ts, int max_lag);

struct FnnOptions {
    double r_tol = 10.0;       // distance-ratio threshold
    double a_tol = 2.0;        // attractor-size threshold
    double threshold = 0.01;   // acceptable false-neighbor fraction
    enum class Search { Automatic, BruteForce, KdTree };
    Search search = Search::Automatic; // Automatic: brute force up to 2000 points
};

struct FnnResult {
    int dimension = 0;
    bool saturated = false;         // no m <= m_max fell below the threshold
    std::vector<double> fractions;  // false-neighbor fraction per m = 1..
};

/// False-nearest-neighbor estimate of the embedding dimension (Kennel
/// criterion). Neighbor search is exact with ties broken toward the lowest
/// point index, so results do not depend on the search backend or thread count.
FnnResult fnn_dimension(const TimeSeries& ts, int delay, int m_max, const FnnOptions& options = {});

EmbeddedTrajectory embed(const TimeSeries& ts, EmbeddingParams params);

} // namespace rqa
