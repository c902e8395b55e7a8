#include "rqa/embedding.hpp"

#include <cmath>

#include "kdtree.hpp"
#include "rqa/error.hpp"

namespace rqa {

namespace {

void require_finite(std::span<const double> values, const char* op) {
    for (double v : values)
        if (!std::isfinite(v)) throw Error(Errc::InvalidInput, std::string(op) + ": non-finite value");
}

double series_stddev(std::span<const double> x) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(x.size()));
}

struct Neighbor {
    std::size_t index;
    double dist2;
};

// Exact nearest neighbor among points [0, count) excluding the query itself,
// lowest index on ties. Scans in index order so ties resolve the same way the
// tree backend does.
Neighbor brute_nearest(std::span<const double> coords, std::size_t count, std::size_t dim,
                       std::size_t query) {
    Neighbor best{count, std::numeric_limits<double>::infinity()};
    const double* q = coords.data() + query * dim;
    for (std::size_t j = 0; j < count; ++j) {
        if (j == query) continue;
        const double* p = coords.data() + j * dim;
        double d2 = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
            const double diff = q[k] - p[k];
            d2 += diff * diff;
        }
        if (d2 < best.dist2) best = {j, d2};
    }
    return best;
}

} // namespace

std::vector<double> autocorrelation(const TimeSeries& ts, int max_lag) {
    const std::size_t n = ts.size();
    if (max_lag < 1) throw Error(Errc::InvalidInput, "max_lag must be positive");
    if (static_cast<std::size_t>(max_lag) >= n)
        throw Error(Errc::InvalidInput, "max_lag must be smaller than the series length");
    require_finite(ts.values, "autocorrelation");

    double mean = 0.0;
    for (double v : ts.values) mean += v;
    mean /= static_cast<double>(n);

    std::vector<double> centered(n);
    for (std::size_t i = 0; i < n; ++i) centered[i] = ts.values[i] - mean;

    double denom = 0.0;
    for (double v : centered) denom += v * v;
    if (denom == 0.0) throw Error(Errc::DegenerateVariance, "constant series has no autocorrelation");

    std::vector<double> acf(static_cast<std::size_t>(max_lag) + 1);
    acf[0] = 1.0;
    for (int lag = 1; lag <= max_lag; ++lag) {
        double sum = 0.0;
        for (std::size_t i = 0; i + lag < n; ++i) sum += centered[i] * centered[i + lag];
        acf[static_cast<std::size_t>(lag)] = sum / denom;
    }
    return acf;
}

int estimate_delay(const TimeSeries& ts, int max_lag) {
    const std::vector<double> acf = autocorrelation(ts, max_lag);
    const double target = 1.0 / std::exp(1.0);
    for (int lag = 1; lag <= max_lag; ++lag)
        if (acf[static_cast<std::size_t>(lag)] <= target) return lag;
    throw Error(Errc::NoCrossing,
                "ACF never falls to 1/e within " + std::to_string(max_lag) + " lags");
}

EmbeddedTrajectory embed(const TimeSeries& ts, EmbeddingParams params) {
    if (params.dimension < 1 || params.delay < 1)
        throw Error(Errc::InvalidInput, "embedding dimension and delay must be positive");
    const std::size_t n = ts.size();
    const std::size_t span = static_cast<std::size_t>(params.dimension - 1) *
                             static_cast<std::size_t>(params.delay);
    if (n < span + 2)
        throw Error(Errc::InsufficientData,
                    "series of length " + std::to_string(n) + " cannot embed with m=" +
                        std::to_string(params.dimension) + ", tau=" + std::to_string(params.delay));
    require_finite(ts.values, "embed");

    EmbeddedTrajectory traj;
    traj.params = params;
    traj.count = n - span;
    traj.coords.resize(traj.count * static_cast<std::size_t>(params.dimension));
    for (std::size_t i = 0; i < traj.count; ++i)
        for (int k = 0; k < params.dimension; ++k)
            traj.coords[i * params.dimension + k] =
                ts.values[i + static_cast<std::size_t>(k) * params.delay];
    return traj;
}

FnnResult fnn_dimension(const TimeSeries& ts, int delay, int m_max, const FnnOptions& options) {
    if (delay < 1 || m_max < 1) throw Error(Errc::InvalidInput, "delay and m_max must be positive");
    const std::size_t n = ts.size();
    require_finite(ts.values, "fnn_dimension");

    const double attractor_size = series_stddev(ts.values);
    if (attractor_size == 0.0)
        throw Error(Errc::DegenerateVariance, "constant series has no attractor extent");
    const double r_tol2 = options.r_tol * options.r_tol;

    FnnResult result;
    for (int m = 1; m <= m_max; ++m) {
        // Judging dimension m requires the (m+1)-th delay coordinate, so both
        // queries and neighbor candidates are limited to extendable points.
        const std::size_t reach = static_cast<std::size_t>(m) * static_cast<std::size_t>(delay);
        if (n < reach + 2)
            throw Error(Errc::InsufficientData,
                        "series too short for the FNN test at m=" + std::to_string(m));
        const std::size_t count = n - reach;
        const EmbeddedTrajectory traj = embed(ts, {m, delay});

        const bool use_tree = options.search == FnnOptions::Search::KdTree ||
                              (options.search == FnnOptions::Search::Automatic && count > 2000);
        const std::size_t dim = static_cast<std::size_t>(m);
        std::span<const double> coords{traj.coords.data(), count * dim};
        detail::KdTree tree = use_tree ? detail::KdTree(coords, count, dim)
                                       : detail::KdTree(coords, 0, dim);

        std::size_t false_count = 0, valid_count = 0;
#pragma omp parallel for schedule(static) reduction(+ : false_count, valid_count)
        for (std::size_t i = 0; i < count; ++i) {
            std::size_t j;
            double r2;
            if (use_tree) {
                auto hit = tree.nearest(traj.point(i), i);
                j = hit.index;
                r2 = hit.dist2;
            } else {
                auto hit = brute_nearest(coords, count, dim, i);
                j = hit.index;
                r2 = hit.dist2;
            }
            if (j >= count || r2 == 0.0) continue; // no usable neighbor
            valid_count += 1;
            const double extension = ts.values[i + reach] - ts.values[j + reach];
            const bool ratio_false = extension * extension > r_tol2 * r2;
            const bool size_false =
                std::sqrt(r2 + extension * extension) > options.a_tol * attractor_size;
            if (ratio_false || size_false) false_count += 1;
        }

        const double fraction =
            valid_count == 0 ? 1.0
                             : static_cast<double>(false_count) / static_cast<double>(valid_count);
        result.fractions.push_back(fraction);
        if (fraction < options.threshold) {
            result.dimension = m;
            result.saturated = false;
            return result;
        }
    }
    result.dimension = m_max;
    result.saturated = true;
    return result;
}

} // namespace rqa
