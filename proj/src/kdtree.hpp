#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

namespace rqa::detail {

/// Exact nearest-neighbor search over low-dimensional points stored in a flat
/// point-major array. Ties on distance resolve to the lowest point index, so
/// query results match a brute-force scan bit for bit.
class KdTree {
public:
    KdTree(std::span<const double> coords, std::size_t count, std::size_t dim)
        : coords_(coords), count_(count), dim_(dim), order_(count) {
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        if (count_ > 0) build(0, count_, 0);
    }

    struct Hit {
        std::size_t index = std::numeric_limits<std::size_t>::max();
        double dist2 = std::numeric_limits<double>::infinity();
    };

    /// Nearest point to `query` whose index differs from `exclude`.
    Hit nearest(std::span<const double> query, std::size_t exclude) const {
        Hit best;
        search(0, count_, 0, query, exclude, best);
        return best;
    }

private:
    const double* point(std::size_t idx) const { return coords_.data() + idx * dim_; }

    void build(std::size_t begin, std::size_t end, std::size_t depth) {
        if (end - begin <= 1) return;
        const std::size_t axis = depth % dim_;
        const std::size_t mid = begin + (end - begin) / 2;
        std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                         [&](std::size_t a, std::size_t b) {
                             const double va = point(a)[axis], vb = point(b)[axis];
                             if (va != vb) return va < vb;
                             return a < b;
                         });
        build(begin, mid, depth + 1);
        build(mid + 1, end, depth + 1);
    }

    void consider(std::size_t idx, std::span<const double> query, std::size_t exclude,
                  Hit& best) const {
        if (idx == exclude) return;
        double d2 = 0.0;
        const double* p = point(idx);
        for (std::size_t k = 0; k < dim_; ++k) {
            const double diff = query[k] - p[k];
            d2 += diff * diff;
        }
        if (d2 < best.dist2 || (d2 == best.dist2 && idx < best.index)) best = {idx, d2};
    }

    void search(std::size_t begin, std::size_t end, std::size_t depth,
                std::span<const double> query, std::size_t exclude, Hit& best) const {
        if (begin >= end) return;
        if (end - begin == 1) {
            consider(order_[begin], query, exclude, best);
            return;
        }
        const std::size_t axis = depth % dim_;
        const std::size_t mid = begin + (end - begin) / 2;
        const std::size_t pivot = order_[mid];
        consider(pivot, query, exclude, best);

        const double delta = query[axis] - point(pivot)[axis];
        const double delta2 = delta * delta;
        if (delta < 0) {
            search(begin, mid, depth + 1, query, exclude, best);
            if (delta2 <= best.dist2) search(mid + 1, end, depth + 1, query, exclude, best);
        } else {
            search(mid + 1, end, depth + 1, query, exclude, best);
            if (delta2 <= best.dist2) search(begin, mid, depth + 1, query, exclude, best);
        }
    }

    std::span<const double> coords_;
    std::size_t count_;
    std::size_t dim_;
    std::vector<std::size_t> order_;
};

} // namespace rqa::detail
