#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "rqa/bit_matrix.hpp"
#include "rqa/embedding.hpp"

namespace rqa {

enum class Norm { Euclidean, Maximum };

const char* to_string(Norm norm) noexcept;

/// Thresholded pairwise-distance matrix: bits(i,j) == 1 iff the trajectory
/// points i and j are within epsilon under the chosen norm. Symmetric with an
/// all-ones main diagonal (the line of identity).
struct RecurrenceMatrix {
    BitMatrix bits;
    double epsilon = 0.0;
    Norm norm = Norm::Euclidean;

    std::size_t size() const noexcept { return bits.size(); }
};

RecurrenceMatrix recurrence_matrix(const EmbeddedTrajectory& traj, double epsilon,
                                   Norm norm = Norm::Euclidean);

enum class LineOrientation { Diagonal, Vertical };

/// Counts of maximal all-ones runs by length; counts[l] is the number of
/// maximal lines of exactly length l. Index 0 is unused.
struct LineHistogram {
    std::vector<std::uint64_t> counts;
    LineOrientation orientation = LineOrientation::Diagonal;

    /// Sum of l * counts[l] for l >= l_min: recurrence points covered by lines
    /// at least that long.
    std::uint64_t covered_points(std::size_t l_min = 1) const;
};

/// Diagonal line-length histogram. With exclude_loi (default) the main
/// diagonal does not participate at all.
LineHistogram diagonal_histogram(const RecurrenceMatrix& rm, bool exclude_loi = true);

/// Vertical line-length histogram; main-diagonal points participate.
LineHistogram vertical_histogram(const RecurrenceMatrix& rm);

/// Exact integer numerator/denominator of a line-based measure, kept separate
/// so tests can compare against oracles in rational arithmetic.
struct MeasureRatio {
    std::uint64_t numerator = 0;
    std::uint64_t denominator = 0;

    double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};

/// DET: fraction of recurrence points on diagonal lines of length >= l_min.
/// Numerator and denominator share the LOI convention. Throws UndefinedMeasure
/// when the denominator is zero.
MeasureRatio det_ratio(const RecurrenceMatrix& rm, int l_min = 2, bool include_loi = false);
double det(const RecurrenceMatrix& rm, int l_min = 2, bool include_loi = false);

/// LAM: fraction of recurrence points in vertical lines of length >= v_min.
MeasureRatio lam_ratio(const RecurrenceMatrix& rm, int v_min = 2);
double lam(const RecurrenceMatrix& rm, int v_min = 2);

/// Binary dump: header (magic "RPV1", N as u64 LE, epsilon as f64 LE) followed
/// by row-major rows packed 8 entries per byte, LSB first, each row padded to
/// a whole byte.
void write_rp_binary(const RecurrenceMatrix& rm, std::ostream& out);

/// Sparse `i,j` coordinate CSV of upper-triangle ones (i <= j).
void write_rp_coords(const RecurrenceMatrix& rm, std::ostream& out);

} // namespace rqa
