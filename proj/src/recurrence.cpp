#include "rqa/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <ostream>

#include "rqa/error.hpp"

namespace rqa {

const char* to_string(Norm norm) noexcept {
    return norm == Norm::Euclidean ? "euclidean" : "maximum";
}

namespace {

bool within_threshold(const double* a, const double* b, int dim, double eps, double eps2,
                      Norm norm) {
    if (norm == Norm::Euclidean) {
        double d2 = 0.0;
        for (int k = 0; k < dim; ++k) {
            const double diff = a[k] - b[k];
            d2 += diff * diff;
        }
        return d2 <= eps2;
    }
    for (int k = 0; k < dim; ++k)
        if (std::fabs(a[k] - b[k]) > eps) return false;
    return true;
}

// Appends maximal run lengths of the row's set bits into hist.
void scan_row_runs(const BitMatrix& bits, std::size_t i, std::vector<std::uint64_t>& hist) {
    const std::size_t n = bits.size();
    auto row = bits.row(i);
    std::size_t run = 0;
    for (std::size_t w = 0; w < row.size(); ++w) {
        const std::size_t valid = std::min<std::size_t>(64, n - w * 64);
        const std::uint64_t word = row[w];
        if (word == 0) {
            if (run > 0) {
                hist[run] += 1;
                run = 0;
            }
            continue;
        }
        if (valid == 64 && word == ~std::uint64_t{0}) {
            run += 64;
            continue;
        }
        for (std::size_t b = 0; b < valid; ++b) {
            if ((word >> b) & 1u) {
                ++run;
            } else if (run > 0) {
                hist[run] += 1;
                run = 0;
            }
        }
    }
    if (run > 0) hist[run] += 1;
}

} // namespace

RecurrenceMatrix recurrence_matrix(const EmbeddedTrajectory& traj, double epsilon, Norm norm) {
    const std::size_t n = traj.count;
    if (n < 2) throw Error(Errc::InsufficientData, "recurrence matrix needs at least 2 points");
    if (!(epsilon > 0.0)) throw Error(Errc::InvalidInput, "epsilon must be positive");
    for (double c : traj.coords)
        if (!std::isfinite(c)) throw Error(Errc::InvalidInput, "non-finite trajectory coordinate");

    RecurrenceMatrix rm;
    rm.epsilon = epsilon;
    rm.norm = norm;
    rm.bits = BitMatrix(n);

    const int dim = traj.dimension();
    const double eps2 = epsilon * epsilon;
    const double* coords = traj.coords.data();

    // Each thread owns whole rows, and d(i,j) evaluates bit-identically to
    // d(j,i), so the matrix comes out symmetric without any mirroring step.
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) {
        auto row = rm.bits.row(i);
        const double* pi = coords + i * static_cast<std::size_t>(dim);
        for (std::size_t j = 0; j < n; ++j) {
            if (within_threshold(pi, coords + j * static_cast<std::size_t>(dim), dim, epsilon,
                                 eps2, norm))
                row[j / 64] |= std::uint64_t{1} << (j % 64);
        }
    }
    return rm;
}

std::uint64_t LineHistogram::covered_points(std::size_t l_min) const {
    std::uint64_t total = 0;
    for (std::size_t l = std::max<std::size_t>(l_min, 1); l < counts.size(); ++l)
        total += static_cast<std::uint64_t>(l) * counts[l];
    return total;
}

LineHistogram diagonal_histogram(const RecurrenceMatrix& rm, bool exclude_loi) {
    const std::size_t n = rm.size();
    LineHistogram hist;
    hist.orientation = LineOrientation::Diagonal;
    hist.counts.assign(n + 1, 0);

    // R is symmetric, so offset -k mirrors offset +k; scan the upper side and
    // double the counts.
#pragma omp parallel
    {
        std::vector<std::uint64_t> local(n + 1, 0);
#pragma omp for schedule(dynamic, 16) nowait
        for (std::size_t k = 1; k < n; ++k) {
            std::size_t run = 0;
            for (std::size_t i = 0; i + k < n; ++i) {
                if (rm.bits.get(i, i + k)) {
                    ++run;
                } else if (run > 0) {
                    local[run] += 1;
                    run = 0;
                }
            }
            if (run > 0) local[run] += 1;
        }
#pragma omp critical(rqa_diag_hist_merge)
        for (std::size_t l = 1; l <= n; ++l) hist.counts[l] += 2 * local[l];
    }

    if (!exclude_loi && n >= 1) hist.counts[n] += 1; // the LOI is one full-length line
    return hist;
}

LineHistogram vertical_histogram(const RecurrenceMatrix& rm) {
    const std::size_t n = rm.size();
    LineHistogram hist;
    hist.orientation = LineOrientation::Vertical;
    hist.counts.assign(n + 1, 0);

    // Column j of a symmetric matrix reads the same as row j, and rows are the
    // cache-friendly direction for packed storage.
#pragma omp parallel
    {
        std::vector<std::uint64_t> local(n + 1, 0);
#pragma omp for schedule(static) nowait
        for (std::size_t i = 0; i < n; ++i) scan_row_runs(rm.bits, i, local);
#pragma omp critical(rqa_vert_hist_merge)
        for (std::size_t l = 1; l <= n; ++l) hist.counts[l] += local[l];
    }
    return hist;
}

namespace {

MeasureRatio ratio_or_throw(const LineHistogram& hist, int min_length, const char* what) {
    MeasureRatio ratio;
    ratio.denominator = hist.covered_points(1);
    ratio.numerator = hist.covered_points(static_cast<std::size_t>(min_length));
    if (ratio.denominator == 0)
        throw Error(Errc::UndefinedMeasure, std::string(what) + " undefined: no recurrence points");
    return ratio;
}

} // namespace

MeasureRatio det_ratio(const RecurrenceMatrix& rm, int l_min, bool include_loi) {
    if (l_min < 2) throw Error(Errc::InvalidInput, "l_min must be at least 2");
    const LineHistogram hist = diagonal_histogram(rm, !include_loi);
    return ratio_or_throw(hist, l_min, "DET");
}

double det(const RecurrenceMatrix& rm, int l_min, bool include_loi) {
    return det_ratio(rm, l_min, include_loi).value();
}

MeasureRatio lam_ratio(const RecurrenceMatrix& rm, int v_min) {
    if (v_min < 2) throw Error(Errc::InvalidInput, "v_min must be at least 2");
    const LineHistogram hist = vertical_histogram(rm);
    return ratio_or_throw(hist, v_min, "LAM");
}

double lam(const RecurrenceMatrix& rm, int v_min) { return lam_ratio(rm, v_min).value(); }

void write_rp_binary(const RecurrenceMatrix& rm, std::ostream& out) {
    const std::size_t n = rm.size();
    out.write("RPV1", 4);
    const std::uint64_t n64 = n;
    char buf[8];
    for (int b = 0; b < 8; ++b) buf[b] = static_cast<char>((n64 >> (8 * b)) & 0xff);
    out.write(buf, 8);
    std::uint64_t eps_bits;
    static_assert(sizeof eps_bits == sizeof rm.epsilon);
    std::memcpy(&eps_bits, &rm.epsilon, 8);
    for (int b = 0; b < 8; ++b) buf[b] = static_cast<char>((eps_bits >> (8 * b)) & 0xff);
    out.write(buf, 8);

    std::vector<char> row_bytes((n + 7) / 8);
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(row_bytes.begin(), row_bytes.end(), 0);
        for (std::size_t j = 0; j < n; ++j)
            if (rm.bits.get(i, j)) row_bytes[j / 8] |= static_cast<char>(1 << (j % 8));
        out.write(row_bytes.data(), static_cast<std::streamsize>(row_bytes.size()));
    }
}

void write_rp_coords(const RecurrenceMatrix& rm, std::ostream& out) {
    const std::size_t n = rm.size();
    out << "i,j\n";
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (rm.bits.get(i, j)) out << i << ',' << j << '\n';
}

} // namespace rqa
