#include "rqa/network.hpp"

#include <algorithm>
#include <bit>

#include "rqa/error.hpp"

namespace rqa {

std::uint64_t RecurrenceNetwork::edge_count() const {
    std::uint64_t total = 0;
    for (std::uint32_t d : degrees) total += d;
    return total / 2;
}

RecurrenceNetwork to_network(const RecurrenceMatrix& rm) {
    const std::size_t n = rm.size();
    RecurrenceNetwork net;
    net.adjacency = rm.bits;
    net.degrees.resize(n);
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) {
        net.adjacency.clear(i, i);
        net.degrees[i] = static_cast<std::uint32_t>(net.adjacency.row_popcount(i));
    }
    return net;
}

namespace {

// Ordered pairs of neighbors of `node` that are adjacent to each other:
// sum over neighbors u of |N(node) & N(u)|. Row words of u exclude u itself
// and row words of node exclude node, so no self pair can sneak in.
std::uint64_t closed_neighbor_pairs(const RecurrenceNetwork& net, std::size_t node) {
    const auto base = net.adjacency.row(node);
    std::uint64_t total = 0;
    for (std::size_t w = 0; w < base.size(); ++w) {
        std::uint64_t word = base[w];
        while (word) {
            const int bit = std::countr_zero(word);
            word &= word - 1;
            const std::size_t u = w * 64 + static_cast<std::size_t>(bit);
            const auto other = net.adjacency.row(u);
            for (std::size_t v = 0; v < base.size(); ++v)
                total += static_cast<std::uint64_t>(std::popcount(base[v] & other[v]));
        }
    }
    return total;
}

} // namespace

double local_clustering(const RecurrenceNetwork& net, std::size_t node) {
    if (node >= net.size()) throw Error(Errc::InvalidInput, "node index out of range");
    const std::uint64_t k = net.degrees[node];
    if (k <= 1) return 0.0;
    return static_cast<double>(closed_neighbor_pairs(net, node)) /
           static_cast<double>(k * (k - 1));
}

double clustering_coefficient(const RecurrenceNetwork& net) {
    const std::size_t n = net.size();
    if (n == 0) throw Error(Errc::InvalidInput, "empty network");
    std::vector<double> local(n, 0.0);
#pragma omp parallel for schedule(dynamic, 32)
    for (std::size_t v = 0; v < n; ++v) {
        const std::uint64_t k = net.degrees[v];
        local[v] = k <= 1 ? 0.0
                          : static_cast<double>(closed_neighbor_pairs(net, v)) /
                                static_cast<double>(k * (k - 1));
    }
    // Serial in-order sum keeps the result independent of the thread count.
    double sum = 0.0;
    for (double c : local) sum += c;
    return sum / static_cast<double>(n);
}

PathLengthReport characteristic_path_length(const RecurrenceNetwork& net) {
    const std::size_t n = net.size();
    if (n < 2) throw Error(Errc::InvalidInput, "path length needs at least 2 nodes");
    if (net.edge_count() == 0)
        throw Error(Errc::UndefinedMeasure, "network has no edges; path length undefined");

    const std::size_t words = net.adjacency.row_words();
    std::uint64_t distance_sum = 0, reachable_pairs = 0;

#pragma omp parallel reduction(+ : distance_sum, reachable_pairs)
    {
        std::vector<std::uint64_t> visited(words), frontier(words), next(words);
#pragma omp for schedule(dynamic, 16)
        for (std::size_t s = 0; s < n; ++s) {
            std::fill(visited.begin(), visited.end(), 0);
            std::fill(frontier.begin(), frontier.end(), 0);
            visited[s / 64] = frontier[s / 64] = std::uint64_t{1} << (s % 64);

            std::uint64_t level = 0;
            while (true) {
                std::fill(next.begin(), next.end(), 0);
                bool any_frontier = false;
                for (std::size_t w = 0; w < words; ++w) {
                    std::uint64_t word = frontier[w];
                    while (word) {
                        const int bit = std::countr_zero(word);
                        word &= word - 1;
                        const auto row = net.adjacency.row(w * 64 + static_cast<std::size_t>(bit));
                        for (std::size_t v = 0; v < words; ++v) next[v] |= row[v];
                    }
                }
                ++level;
                std::uint64_t fresh = 0;
                for (std::size_t w = 0; w < words; ++w) {
                    next[w] &= ~visited[w];
                    visited[w] |= next[w];
                    fresh += static_cast<std::uint64_t>(std::popcount(next[w]));
                    if (next[w]) any_frontier = true;
                }
                if (!any_frontier) break;
                distance_sum += level * fresh;
                reachable_pairs += fresh;
                frontier.swap(next);
            }
        }
    }

    // Component count: one serial sweep reusing the same adjacency.
    std::size_t components = 0;
    {
        std::vector<std::uint64_t> seen(words, 0), frontier(words), next(words);
        for (std::size_t s = 0; s < n; ++s) {
            if ((seen[s / 64] >> (s % 64)) & 1u) continue;
            ++components;
            std::fill(frontier.begin(), frontier.end(), 0);
            frontier[s / 64] = std::uint64_t{1} << (s % 64);
            seen[s / 64] |= frontier[s / 64];
            bool grew = true;
            while (grew) {
                std::fill(next.begin(), next.end(), 0);
                for (std::size_t w = 0; w < words; ++w) {
                    std::uint64_t word = frontier[w];
                    while (word) {
                        const int bit = std::countr_zero(word);
                        word &= word - 1;
                        const auto row = net.adjacency.row(w * 64 + static_cast<std::size_t>(bit));
                        for (std::size_t v = 0; v < words; ++v) next[v] |= row[v];
                    }
                }
                grew = false;
                for (std::size_t w = 0; w < words; ++w) {
                    next[w] &= ~seen[w];
                    seen[w] |= next[w];
                    if (next[w]) grew = true;
                }
                frontier.swap(next);
            }
        }
    }

    PathLengthReport report;
    report.distance_sum = distance_sum;
    report.reachable_pairs = reachable_pairs;
    report.components = components;
    report.cpl = static_cast<double>(distance_sum) / static_cast<double>(reachable_pairs);
    report.reachable_fraction = static_cast<double>(reachable_pairs) /
                                (static_cast<double>(n) * static_cast<double>(n - 1));
    return report;
}

} // namespace rqa
