#include "doctest.h"

#include <cmath>
#include <cstring>
#include <random>
#include <sstream>

#include "rqa/error.hpp"
#include "rqa/preprocess.hpp"
#include "rqa/recurrence.hpp"
#include "rqa/reference.hpp"
#include "synthetic.hpp"

using namespace rqa;
using testsupport::make_series;

namespace {

bool matrices_equal(const RecurrenceMatrix& rm, const ref::DenseBinaryMatrix& dense) {
    if (rm.size() != dense.n) return false;
    for (std::size_t i = 0; i < dense.n; ++i)
        for (std::size_t j = 0; j < dense.n; ++j)
            if (rm.bits.get(i, j) != static_cast<bool>(dense.at(i, j))) return false;
    return true;
}

bool histograms_equal(const LineHistogram& a, const LineHistogram& b) {
    if (a.counts.size() != b.counts.size()) return false;
    for (std::size_t l = 1; l < a.counts.size(); ++l)
        if (a.counts[l] != b.counts[l]) return false;
    return true;
}

EmbeddedTrajectory points_1d(std::vector<double> values) {
    EmbeddedTrajectory traj;
    traj.params = {1, 1};
    traj.count = values.size();
    traj.coords = std::move(values);
    return traj;
}

} // namespace

TEST_CASE("recurrence_matrix basic shapes") {
    const auto twins = recurrence_matrix(points_1d({0.7, 0.7}), 0.1);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(twins.bits.get(i, j));

    const auto apart = recurrence_matrix(points_1d({0.0, 1.0}), 0.5);
    CHECK(apart.bits.get(0, 0));
    CHECK(apart.bits.get(1, 1));
    CHECK(!apart.bits.get(0, 1));
    CHECK(!apart.bits.get(1, 0));
}

TEST_CASE("recurrence_matrix matches the pairwise-distance oracle") {
    for (Norm norm : {Norm::Euclidean, Norm::Maximum}) {
        const auto traj = testsupport::random_trajectory(100, 4, 101);
        const auto fast = recurrence_matrix(traj, 0.25, norm);
        const auto dense = ref::recurrence_dense(traj, 0.25, norm);
        CHECK(matrices_equal(fast, dense));
        for (std::size_t i = 0; i < fast.size(); ++i) {
            CHECK(fast.bits.get(i, i));
            for (std::size_t j = 0; j < i; ++j) CHECK(fast.bits.get(i, j) == fast.bits.get(j, i));
        }
    }
}

TEST_CASE("recurrence_matrix validates input") {
    EmbeddedTrajectory traj = points_1d({0.1, 0.2, std::nan("")});
    try {
        recurrence_matrix(traj, 0.25);
        FAIL("expected InvalidInput");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InvalidInput);
    }
    CHECK_THROWS_AS(recurrence_matrix(points_1d({0.5}), 0.25), Error);
    CHECK_THROWS_AS(recurrence_matrix(points_1d({0.1, 0.2}), 0.0), Error);
}

TEST_CASE("recurrence is monotone in epsilon and norm-homogeneous") {
    const auto traj = testsupport::random_trajectory(80, 3, 103);
    const auto tight = recurrence_matrix(traj, 0.1);
    const auto loose = recurrence_matrix(traj, 0.3);
    for (std::size_t i = 0; i < traj.count; ++i)
        for (std::size_t j = 0; j < traj.count; ++j)
            if (tight.bits.get(i, j)) CHECK(loose.bits.get(i, j));

    EmbeddedTrajectory doubled = traj;
    for (double& c : doubled.coords) c *= 2.0;
    const auto scaled = recurrence_matrix(doubled, 0.2);
    const auto original = recurrence_matrix(traj, 0.1);
    for (std::size_t i = 0; i < traj.count; ++i)
        for (std::size_t j = 0; j < traj.count; ++j)
            CHECK(scaled.bits.get(i, j) == original.bits.get(i, j));
}

TEST_CASE("diagonal histogram of the all-ones matrix") {
    const std::size_t n = 6;
    const auto rm = recurrence_matrix(points_1d(std::vector<double>(n, 0.5)), 1.0);
    const auto hist = diagonal_histogram(rm, true);
    for (std::size_t l = 1; l < n; ++l) CHECK(hist.counts[l] == 2);
    CHECK(hist.counts[n] == 0);

    const auto with_loi = diagonal_histogram(rm, false);
    CHECK(with_loi.counts[n] == 1);
}

TEST_CASE("diagonal histogram of the identity matrix is empty off the LOI") {
    const auto rm = recurrence_matrix(points_1d({0.0, 10.0, 20.0, 30.0}), 1.0);
    const auto hist = diagonal_histogram(rm, true);
    for (std::size_t l = 1; l < hist.counts.size(); ++l) CHECK(hist.counts[l] == 0);
}

TEST_CASE("vertical histogram basics") {
    const std::size_t n = 5;
    const auto ones = recurrence_matrix(points_1d(std::vector<double>(n, 0.5)), 1.0);
    const auto vhist = vertical_histogram(ones);
    CHECK(vhist.counts[n] == n);

    const auto identity = recurrence_matrix(points_1d({0.0, 10.0, 20.0, 30.0}), 1.0);
    const auto ihist = vertical_histogram(identity);
    CHECK(ihist.counts[1] == 4);
}

TEST_CASE("histograms agree with run-length oracles on random symmetric matrices") {
    for (unsigned seed : {211u, 212u, 213u}) {
        const auto dense = testsupport::random_symmetric_recurrence(50, 0.3, seed);
        const auto rm = testsupport::recurrence_from_dense(dense);
        CHECK(histograms_equal(diagonal_histogram(rm, true),
                               ref::diagonal_histogram_dense(dense, true)));
        CHECK(histograms_equal(diagonal_histogram(rm, false),
                               ref::diagonal_histogram_dense(dense, false)));
        CHECK(histograms_equal(vertical_histogram(rm), ref::vertical_histogram_dense(dense)));
    }
}

TEST_CASE("vertical histogram equals the row-run histogram by symmetry") {
    const auto dense = testsupport::random_symmetric_recurrence(40, 0.25, 214);
    ref::DenseBinaryMatrix transposed = dense;
    for (std::size_t i = 0; i < dense.n; ++i)
        for (std::size_t j = 0; j < dense.n; ++j)
            transposed.cells[j * dense.n + i] = dense.at(i, j);
    CHECK(histograms_equal(ref::vertical_histogram_dense(dense),
                           ref::vertical_histogram_dense(transposed)));
}

TEST_CASE("det has the closed form on the all-ones matrix") {
    const std::size_t n = 7;
    const auto rm = recurrence_matrix(points_1d(std::vector<double>(n, 0.5)), 1.0);
    const auto ratio = det_ratio(rm, 2);
    CHECK(ratio.denominator == n * (n - 1));
    CHECK(ratio.numerator == ratio.denominator - 2);
    CHECK(det(rm) == doctest::Approx(1.0 - 2.0 / static_cast<double>(n * (n - 1))));
    CHECK(det(rm) > 0.9);
}

TEST_CASE("det is zero when off-LOI points are isolated") {
    // Points 0 and 2 recur with each other but not with 1; the only off-LOI
    // structures are isolated cells.
    const auto rm = recurrence_matrix(points_1d({0.0, 5.0, 0.2}), 0.5);
    CHECK(det(rm) == 0.0);
}

TEST_CASE("det is undefined on the identity matrix") {
    const auto rm = recurrence_matrix(points_1d({0.0, 10.0, 20.0}), 1.0);
    try {
        det(rm);
        FAIL("expected UndefinedMeasure");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::UndefinedMeasure);
    }
    // With the LOI kept, the measure exists (the LOI is one long line).
    CHECK(det(rm, 2, true) == 1.0);
}

TEST_CASE("lam basics") {
    const std::size_t n = 5;
    const auto ones = recurrence_matrix(points_1d(std::vector<double>(n, 0.5)), 1.0);
    CHECK(lam(ones) == 1.0);

    const auto identity = recurrence_matrix(points_1d({0.0, 10.0, 20.0, 30.0}), 1.0);
    CHECK(lam(identity) == 0.0);
}

TEST_CASE("det and lam of a periodic signal are near 1") {
    const auto wave = uniform_deviate(make_series(testsupport::sine_wave(1200, 60.0, 0.4)));
    const auto traj = embed(wave, {4, 15});
    const auto rm = recurrence_matrix(traj, 0.25);
    CHECK(det(rm) > 0.99);
    CHECK(lam(rm) > 0.99);

    // Cross-check against the dense oracle route.
    const auto dense = ref::recurrence_dense(traj, 0.25, Norm::Euclidean);
    const auto oracle_det = ref::ratio_from_histogram(ref::diagonal_histogram_dense(dense, true), 2);
    const auto fast_det = det_ratio(rm, 2);
    CHECK(fast_det.numerator == oracle_det.numerator);
    CHECK(fast_det.denominator == oracle_det.denominator);
}

TEST_CASE("det and lam match the oracle exactly on random matrices") {
    std::mt19937 rng(510);
    std::uniform_real_distribution<double> density(0.05, 0.6);
    for (int rep = 0; rep < 25; ++rep) {
        const std::size_t n = 2 + rng() % 63;
        const auto dense = testsupport::random_symmetric_recurrence(n, density(rng), rng());
        const auto rm = testsupport::recurrence_from_dense(dense);

        const auto oracle_d = ref::ratio_from_histogram(ref::diagonal_histogram_dense(dense, true), 2);
        if (oracle_d.denominator > 0) {
            const auto fast_d = det_ratio(rm, 2);
            CHECK(fast_d.numerator == oracle_d.numerator);
            CHECK(fast_d.denominator == oracle_d.denominator);
        }
        const auto oracle_v = ref::ratio_from_histogram(ref::vertical_histogram_dense(dense), 2);
        const auto fast_v = lam_ratio(rm, 2);
        CHECK(fast_v.numerator == oracle_v.numerator);
        CHECK(fast_v.denominator == oracle_v.denominator);
    }
}

TEST_CASE("rp binary export carries header and packed rows") {
    const auto rm = recurrence_matrix(points_1d({0.0, 0.1, 0.9, 1.0}), 0.15);
    std::ostringstream out(std::ios::binary);
    write_rp_binary(rm, out);
    const std::string blob = out.str();
    REQUIRE(blob.size() == 20 + 4 * 1); // header + 4 rows of 1 byte
    CHECK(blob.substr(0, 4) == "RPV1");
    std::uint64_t n = 0;
    for (int b = 7; b >= 0; --b) n = (n << 8) | static_cast<unsigned char>(blob[4 + b]);
    CHECK(n == 4);
    double eps = 0.0;
    std::memcpy(&eps, blob.data() + 12, 8);
    CHECK(eps == 0.15);
    for (std::size_t i = 0; i < 4; ++i) {
        const auto byte = static_cast<unsigned char>(blob[20 + i]);
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(((byte >> j) & 1u) == (rm.bits.get(i, j) ? 1u : 0u));
    }
}

TEST_CASE("rp coordinate export lists upper-triangle ones") {
    const auto rm = recurrence_matrix(points_1d({0.0, 0.1, 0.9}), 0.15);
    std::ostringstream out;
    write_rp_coords(rm, out);
    CHECK(out.str() == "i,j\n0,0\n0,1\n1,1\n2,2\n");
}
