#include "rqa/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rqa::ref {

DenseBinaryMatrix recurrence_dense(const EmbeddedTrajectory& traj, double epsilon, Norm norm) {
    const std::size_t n = traj.count;
    const int dim = traj.dimension();
    DenseBinaryMatrix m;
    m.n = n;
    m.cells.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            bool close = false;
            if (norm == Norm::Euclidean) {
                double d2 = 0.0;
                for (int k = 0; k < dim; ++k) {
                    const double diff = traj.coords[i * dim + k] - traj.coords[j * dim + k];
                    d2 += diff * diff;
                }
                close = d2 <= epsilon * epsilon;
            } else {
                double dmax = 0.0;
                for (int k = 0; k < dim; ++k)
                    dmax = std::max(dmax,
                                    std::fabs(traj.coords[i * dim + k] - traj.coords[j * dim + k]));
                close = dmax <= epsilon;
            }
            m.cells[i * n + j] = close ? 1 : 0;
        }
    }
    return m;
}

LineHistogram diagonal_histogram_dense(const DenseBinaryMatrix& m, bool exclude_loi) {
    LineHistogram hist;
    hist.orientation = LineOrientation::Diagonal;
    hist.counts.assign(m.n + 1, 0);
    const auto n = static_cast<std::ptrdiff_t>(m.n);
    for (std::ptrdiff_t offset = -(n - 1); offset <= n - 1; ++offset) {
        if (exclude_loi && offset == 0) continue;
        std::size_t run = 0;
        for (std::ptrdiff_t i = std::max<std::ptrdiff_t>(0, -offset);
             i < n && i + offset < n; ++i) {
            if (m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(i + offset))) {
                ++run;
            } else if (run > 0) {
                hist.counts[run] += 1;
                run = 0;
            }
        }
        if (run > 0) hist.counts[run] += 1;
    }
    return hist;
}

LineHistogram vertical_histogram_dense(const DenseBinaryMatrix& m) {
    LineHistogram hist;
    hist.orientation = LineOrientation::Vertical;
    hist.counts.assign(m.n + 1, 0);
    for (std::size_t j = 0; j < m.n; ++j) {
        std::size_t run = 0;
        for (std::size_t i = 0; i < m.n; ++i) {
            if (m.at(i, j)) {
                ++run;
            } else if (run > 0) {
                hist.counts[run] += 1;
                run = 0;
            }
        }
        if (run > 0) hist.counts[run] += 1;
    }
    return hist;
}

MeasureRatio ratio_from_histogram(const LineHistogram& h, int min_length) {
    MeasureRatio ratio;
    for (std::size_t l = 1; l < h.counts.size(); ++l) {
        const std::uint64_t points = static_cast<std::uint64_t>(l) * h.counts[l];
        ratio.denominator += points;
        if (l >= static_cast<std::size_t>(min_length)) ratio.numerator += points;
    }
    return ratio;
}

std::vector<std::uint64_t> triangle_paths_dense(const DenseBinaryMatrix& adj) {
    std::vector<std::uint64_t> paths(adj.n, 0);
    for (std::size_t v = 0; v < adj.n; ++v) {
        std::uint64_t count = 0;
        for (std::size_t i = 0; i < adj.n; ++i) {
            if (!adj.at(v, i)) continue;
            for (std::size_t j = 0; j < adj.n; ++j)
                if (adj.at(v, j) && adj.at(i, j)) ++count;
        }
        paths[v] = count;
    }
    return paths;
}

double clustering_coefficient_dense(const DenseBinaryMatrix& adj) {
    const std::vector<std::uint64_t> paths = triangle_paths_dense(adj);
    double sum = 0.0;
    for (std::size_t v = 0; v < adj.n; ++v) {
        std::uint64_t degree = 0;
        for (std::size_t j = 0; j < adj.n; ++j) degree += adj.at(v, j);
        if (degree > 1)
            sum += static_cast<double>(paths[v]) / static_cast<double>(degree * (degree - 1));
    }
    return sum / static_cast<double>(adj.n);
}

ApspSummary floyd_warshall(const DenseBinaryMatrix& adj) {
    const std::size_t n = adj.n;
    constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max() / 2;
    std::vector<std::uint32_t> dist(n * n, kInf);
    for (std::size_t i = 0; i < n; ++i) {
        dist[i * n + i] = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (adj.at(i, j)) dist[i * n + j] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint32_t dik = dist[i * n + k];
            if (dik >= kInf) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (dik + dist[k * n + j] < dist[i * n + j]) dist[i * n + j] = dik + dist[k * n + j];
        }

    ApspSummary summary;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || dist[i * n + j] >= kInf) continue;
            summary.distance_sum += dist[i * n + j];
            summary.reachable_pairs += 1;
        }
    return summary;
}

} // namespace rqa::ref
