#pragma once

#include <cstdint>
#include <vector>

#include "rqa/recurrence.hpp"

namespace rqa {

/// Simple undirected graph: the recurrence matrix with self-loops removed.
/// Immutable after construction; safe to share across threads.
struct RecurrenceNetwork {
    BitMatrix adjacency;
    std::vector<std::uint32_t> degrees;

    std::size_t size() const noexcept { return adjacency.size(); }
    std::uint64_t edge_count() const;
};

RecurrenceNetwork to_network(const RecurrenceMatrix& rm);

/// Fraction of ordered neighbor pairs of `node` that are themselves adjacent;
/// 0 by convention for degree <= 1.
double local_clustering(const RecurrenceNetwork& net, std::size_t node);

/// Mean local clustering over all nodes, zero-degree nodes included.
double clustering_coefficient(const RecurrenceNetwork& net);

struct PathLengthReport {
    double cpl = 0.0;                 // mean shortest-path length over reachable ordered pairs
    double reachable_fraction = 0.0;  // reachable ordered pairs / N(N-1)
    std::size_t components = 0;
    std::uint64_t distance_sum = 0;   // integer total over reachable ordered pairs
    std::uint64_t reachable_pairs = 0;
};

/// All-pairs BFS over the packed adjacency. Averages over reachable pairs only
/// and reports how much of the pair space that covers; a network with no edges
/// has no defined path length and throws UndefinedMeasure.
PathLengthReport characteristic_path_length(const RecurrenceNetwork& net);

} // namespace rqa
