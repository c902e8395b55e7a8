#pragma once

#include <cstdint>
#include <vector>

#include "rqa/embedding.hpp"
#include "rqa/recurrence.hpp"

namespace rqa::ref {

/// Serial reference implementations of the parallel kernels. These stay
/// deliberately naive (dense storage, direct scans, cubic loops) and share no
/// code with the packed/OpenMP paths; tests and the benchmark compare the two.

/// Dense row-major N*N matrix of 0/1 entries.
struct DenseBinaryMatrix {
    std::size_t n = 0;
    std::vector<std::uint8_t> cells;

    std::uint8_t at(std::size_t i, std::size_t j) const { return cells[i * n + j]; }
};

DenseBinaryMatrix recurrence_dense(const EmbeddedTrajectory& traj, double epsilon, Norm norm);

LineHistogram diagonal_histogram_dense(const DenseBinaryMatrix& m, bool exclude_loi);
LineHistogram vertical_histogram_dense(const DenseBinaryMatrix& m);

MeasureRatio ratio_from_histogram(const LineHistogram& h, int min_length);

/// Ordered closed neighbor pairs through each node, by direct triple
/// enumeration.
std::vector<std::uint64_t> triangle_paths_dense(const DenseBinaryMatrix& adj);

double clustering_coefficient_dense(const DenseBinaryMatrix& adj);

struct ApspSummary {
    std::uint64_t distance_sum = 0;
    std::uint64_t reachable_pairs = 0; // ordered, i != j
};

/// Floyd-Warshall over the dense adjacency; unreachable pairs are skipped.
ApspSummary floyd_warshall(const DenseBinaryMatrix& adj);

} // namespace rqa::ref
