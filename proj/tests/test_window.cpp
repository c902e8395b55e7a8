#include "doctest.h"

#include <cmath>
#include <random>

#include "rqa/error.hpp"
#include "rqa/network.hpp"
#include "rqa/preprocess.hpp"
#include "rqa/trend.hpp"
#include "rqa/window.hpp"
#include "synthetic.hpp"

using namespace rqa;
using testsupport::make_series;

namespace {

WindowConfig rp_config(int length, int step, std::vector<Measure> measures) {
    WindowConfig cfg;
    cfg.length = length;
    cfg.step = step;
    cfg.measures = std::move(measures);
    return cfg;
}

} // namespace

TEST_CASE("sliding_windows counts and starts") {
    WindowConfig cfg = rp_config(100, 100, {Measure::Var});
    auto w300 = sliding_windows(make_series(testsupport::gaussian_noise(300, 1)), cfg);
    REQUIRE(w300.size() == 3);
    CHECK(w300[0].start == 0);
    CHECK(w300[1].start == 100);
    CHECK(w300[2].start == 200);

    CHECK(sliding_windows(make_series(testsupport::gaussian_noise(299, 1)), cfg).size() == 2);

    cfg = rp_config(1500, 100, {Measure::Var});
    CHECK(sliding_windows(make_series(testsupport::gaussian_noise(6000, 2)), cfg).size() == 46);

    cfg = rp_config(100, 7, {Measure::Var});
    try {
        sliding_windows(make_series(testsupport::gaussian_noise(99, 1)), cfg);
        FAIL("expected InsufficientData");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InsufficientData);
    }
}

TEST_CASE("window count follows the closed form for random shapes") {
    std::mt19937 rng(404);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 50 + rng() % 2000;
        const int length = 2 + static_cast<int>(rng() % 200);
        const int step = 1 + static_cast<int>(rng() % 50);
        if (n < static_cast<std::size_t>(length)) continue;
        WindowConfig cfg = rp_config(length, step, {Measure::Var});
        const auto windows = sliding_windows(make_series(testsupport::gaussian_noise(n, 405)), cfg);
        const std::size_t expected = (n - static_cast<std::size_t>(length)) /
                                         static_cast<std::size_t>(step) + 1;
        CHECK(windows.size() == expected);
        for (const auto& w : windows) CHECK(w.values.size() == static_cast<std::size_t>(length));
    }
}

TEST_CASE("windowed_measures: near-constant signal recurs everywhere") {
    std::vector<double> x = testsupport::gaussian_noise(600, 406, 1e-4);
    for (double& v : x) v += 5.0;
    WindowConfig cfg = rp_config(100, 50, {Measure::Det});
    cfg.renormalize = false;
    const auto series = windowed_measures(make_series(x), cfg);
    REQUIRE(series.centers.size() == 11);
    for (std::size_t i = 0; i < series.centers.size(); ++i) {
        CHECK(series.columns[0].status[i].empty());
        CHECK(series.columns[0].values[i] > 0.95);
    }
}

TEST_CASE("windowed DET separates sine from noise in every aligned window") {
    const std::size_t n = 1500;
    const auto sine = make_series(testsupport::sine_wave(n, 75.0, 0.1, 0.01, 407));
    const auto noise = make_series(testsupport::gaussian_noise(n, 408));
    const WindowConfig cfg = rp_config(250, 125, {Measure::Det, Measure::Lam});
    const auto s = windowed_measures(sine, cfg);
    const auto g = windowed_measures(noise, cfg);
    REQUIRE(s.centers.size() == g.centers.size());
    for (std::size_t i = 0; i < s.centers.size(); ++i) {
        CHECK(s.columns[0].values[i] > g.columns[0].values[i]);
        CHECK(s.columns[1].values[i] > g.columns[1].values[i]);
    }
}

TEST_CASE("windowed measures equal whole-series measures on the same slice") {
    const auto x = make_series(testsupport::ar1_series(800, 0.9, 409));
    WindowConfig cfg = rp_config(200, 150, {Measure::Det, Measure::Lam, Measure::Cc, Measure::Cpl,
                                            Measure::Var, Measure::Ac1});
    cfg.embedding = EmbeddingParams{3, 4};
    const auto series = windowed_measures(x, cfg);

    for (std::size_t wi = 0; wi < series.centers.size(); ++wi) {
        const std::size_t start = wi * static_cast<std::size_t>(cfg.step);
        TimeSeries slice;
        slice.values.assign(x.values.begin() + start, x.values.begin() + start + cfg.length);

        TimeSeries local = uniform_deviate(slice);
        const auto rm = recurrence_matrix(embed(local, *cfg.embedding), cfg.epsilon, cfg.norm);
        const auto net = to_network(rm);
        CHECK(series.columns[0].values[wi] == det(rm, cfg.l_min, cfg.include_loi));
        CHECK(series.columns[1].values[wi] == lam(rm, cfg.v_min));
        CHECK(series.columns[2].values[wi] == clustering_coefficient(net));
        CHECK(series.columns[3].values[wi] == characteristic_path_length(net).cpl);

        double mean = 0;
        for (double v : slice.values) mean += v;
        mean /= slice.size();
        double ss = 0;
        for (double v : slice.values) ss += (v - mean) * (v - mean);
        CHECK(series.columns[4].values[wi] ==
              doctest::Approx(ss / (slice.size() - 1)).epsilon(1e-15));
    }
}

TEST_CASE("windowed measures record failures as missing values with reasons") {
    // Far-apart values and a tiny epsilon: no recurrences off the LOI, so DET
    // is undefined and CPL has no edges, while LAM (LOI kept) still exists.
    std::vector<double> spread(300);
    for (std::size_t i = 0; i < spread.size(); ++i) spread[i] = static_cast<double>(i) * 100.0;
    WindowConfig cfg = rp_config(100, 100, {Measure::Det, Measure::Lam, Measure::Cpl});
    cfg.renormalize = false;
    cfg.epsilon = 1e-6;
    const auto series = windowed_measures(make_series(spread), cfg);
    REQUIRE(series.centers.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(series.columns[0].status[i] == "UndefinedMeasure");
        CHECK(std::isnan(series.columns[0].values[i]));
        CHECK(series.columns[1].status[i].empty());
        CHECK(series.columns[1].values[i] == 0.0);
        CHECK(series.columns[2].status[i] == "UndefinedMeasure");
    }
}

TEST_CASE("recurrence within a window depends only on content, not position") {
    const std::vector<double> motif = testsupport::sine_wave(120, 30.0, 0.5, 0.05, 410);
    std::vector<double> shifted;
    shifted.insert(shifted.end(), motif.begin(), motif.end());
    shifted.insert(shifted.end(), motif.begin(), motif.end());
    WindowConfig cfg = rp_config(120, 120, {Measure::Det, Measure::Lam});
    const auto series = windowed_measures(make_series(shifted), cfg);
    REQUIRE(series.centers.size() == 2);
    CHECK(series.columns[0].values[0] == series.columns[0].values[1]);
    CHECK(series.columns[1].values[0] == series.columns[1].values[1]);
}

TEST_CASE("variance_series basics and the two-point window formula") {
    WindowConfig cfg = rp_config(50, 25, {});
    const auto flat = variance_series(make_series(std::vector<double>(200, 2.5)), cfg);
    for (double v : flat.columns[0].values) CHECK(v == 0.0);

    std::vector<double> alternating(100);
    for (std::size_t i = 0; i < alternating.size(); ++i) alternating[i] = i % 2 ? 1.0 : 0.0;
    WindowConfig cfg2 = rp_config(40, 20, {});
    const auto var = variance_series(make_series(alternating), cfg2);
    const double n = 40.0;
    for (double v : var.columns[0].values)
        CHECK(v == doctest::Approx(0.25 * n / (n - 1)).epsilon(1e-12));
}

TEST_CASE("variance ramp produces an increasing detected trend") {
    std::mt19937 rng(411);
    std::normal_distribution<double> dist(0.0, 1.0);
    const std::size_t n = 3000;
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double sigma = 1.0 + static_cast<double>(i) / static_cast<double>(n); // doubles
        x[i] = sigma * dist(rng);
    }
    WindowConfig cfg = rp_config(250, 50, {});
    const auto var = variance_series(make_series(x), cfg);
    const auto trend = mann_kendall_modified(var.columns[0].values, 0.05);
    CHECK(trend.direction == TrendDirection::Increasing);
    CHECK(trend.p < 0.05);
}

TEST_CASE("autocorr1_series hits the textbook cases") {
    std::vector<double> alternating(120);
    for (std::size_t i = 0; i < alternating.size(); ++i) alternating[i] = i % 2 ? -1.0 : 1.0;
    WindowConfig cfg = rp_config(60, 60, {});
    const auto ac = autocorr1_series(make_series(alternating), cfg);
    for (double v : ac.columns[0].values) CHECK(std::fabs(v - (-1.0)) <= 1.0 / 60.0 + 1e-12);

    const auto smooth = autocorr1_series(make_series(testsupport::ar1_series(2000, 0.95, 412)),
                                         rp_config(500, 250, {}));
    for (double v : smooth.columns[0].values) CHECK(v > 0.9);

    const auto noisy = autocorr1_series(make_series(testsupport::gaussian_noise(2000, 413)),
                                        rp_config(500, 250, {}));
    for (double v : noisy.columns[0].values)
        CHECK(std::fabs(v) < 3.0 / std::sqrt(500.0));

    const auto degenerate = autocorr1_series(make_series(std::vector<double>(100, 1.0)),
                                             rp_config(50, 50, {}));
    for (const auto& st : degenerate.columns[0].status) CHECK(st == "DegenerateVariance");
}

TEST_CASE("measure series centers and columns stay aligned") {
    const auto x = make_series(testsupport::gaussian_noise(1000, 414));
    WindowConfig cfg = rp_config(100, 30, {Measure::Var, Measure::Ac1});
    const auto series = windowed_measures(x, cfg);
    REQUIRE(series.columns.size() == 2);
    CHECK(series.columns[0].values.size() == series.centers.size());
    CHECK(series.columns[1].values.size() == series.centers.size());
    for (std::size_t i = 0; i + 1 < series.centers.size(); ++i)
        CHECK(series.centers[i + 1] - series.centers[i] == static_cast<std::size_t>(cfg.step));
    CHECK(series.centers[0] == static_cast<std::size_t>(cfg.length / 2));
}

TEST_CASE("heatmap orders markets by how much the measure moved") {
    WindowConfig cfg = rp_config(100, 50, {Measure::Var});
    auto flat = variance_series(make_series(std::vector<double>(400, 1.0), "flat"), cfg);
    std::vector<double> swing = testsupport::gaussian_noise(400, 415);
    for (std::size_t i = 200; i < 400; ++i) swing[i] *= 6.0;
    auto moving = variance_series(make_series(swing, "moving"), cfg);

    std::vector<MeasureSeries> set = {moving, flat};
    const auto table = heatmap_table(set, Measure::Var);
    REQUIRE(table.labels.size() == 2);
    CHECK(table.labels[0] == "flat");
    CHECK(table.labels[1] == "moving");
    CHECK(table.rows[0].size() == table.centers.size());

    // Identical series tie-break alphabetically.
    auto a = flat, b = flat;
    a.label = "zeta";
    b.label = "alpha";
    std::vector<MeasureSeries> tied = {a, b};
    const auto tie_table = heatmap_table(tied, Measure::Var);
    CHECK(tie_table.labels[0] == "alpha");
    CHECK(tie_table.labels[1] == "zeta");
}

TEST_CASE("heatmap rejects mismatched configs") {
    auto a = variance_series(make_series(testsupport::gaussian_noise(400, 416), "a"),
                             rp_config(100, 50, {}));
    auto b = variance_series(make_series(testsupport::gaussian_noise(400, 417), "b"),
                             rp_config(100, 25, {}));
    std::vector<MeasureSeries> set = {a, b};
    try {
        heatmap_table(set, Measure::Var);
        FAIL("expected ConfigMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ConfigMismatch);
    }
}

TEST_CASE("window config validation") {
    WindowConfig cfg = rp_config(1500, 100, {Measure::Det});
    cfg.embedding = EmbeddingParams{4, 500}; // 1500 - 3*500 = 0 embedded points
    CHECK_THROWS_AS(cfg.validate(), Error);

    WindowConfig sparse = rp_config(10, 50, {Measure::Var});
    CHECK(!sparse.validate().empty()); // warning, not an error

    WindowConfig bad_eps = rp_config(100, 10, {Measure::Det});
    bad_eps.epsilon = 0.0;
    CHECK_THROWS_AS(bad_eps.validate(), Error);
}
