#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rqa/embedding.hpp"
#include "rqa/recurrence.hpp"
#include "rqa/series.hpp"

namespace rqa {

enum class Measure { Det, Lam, Cc, Cpl, Var, Ac1 };

inline constexpr std::array<Measure, 6> kAllMeasures = {
    Measure::Det, Measure::Lam, Measure::Cc, Measure::Cpl, Measure::Var, Measure::Ac1};

const char* to_string(Measure m) noexcept;              // "DET", "LAM", ...
std::optional<Measure> parse_measure(std::string_view); // case-insensitive

struct WindowConfig {
    int length = 250;
    int step = 10;
    /// Engaged: delay-embed each window with these global parameters.
    /// Disengaged: build the recurrence matrix from scalar values directly.
    std::optional<EmbeddingParams> embedding;
    double epsilon = 0.25;
    std::vector<Measure> measures;
    /// Re-apply the uniform deviate to each window slice before the
    /// recurrence-based measures, so epsilon keeps its fraction-of-range
    /// meaning locally. VAR and AC1 always see the raw slice.
    bool renormalize = true;
    int l_min = 2;
    int v_min = 2;
    bool include_loi = false;
    Norm norm = Norm::Euclidean;

    /// Throws on violations that make the run impossible; returns
    /// human-readable warnings for merely questionable settings.
    std::vector<std::string> validate() const;

    bool compatible_with(const WindowConfig& other) const;
};

/// One value per window center; NaN marks a window whose measure could not be
/// computed, with the reason kept alongside.
struct MeasureColumn {
    std::vector<double> values;
    std::vector<std::string> status; // empty string = ok
};

struct MeasureSeries {
    std::vector<std::size_t> centers; // strictly increasing, spacing = step
    std::optional<Date> start_date;   // center date = start_date + center days
    std::string label;
    WindowConfig config;
    std::vector<MeasureColumn> columns; // aligned with config.measures

    const MeasureColumn* column(Measure m) const;
    std::optional<Date> center_date(std::size_t idx) const;
};

struct WindowSlice {
    std::size_t start = 0;
    std::span<const double> values;
};

/// Contiguous windows starting at 0, step, 2*step, ...; a trailing partial
/// window is discarded.
std::vector<WindowSlice> sliding_windows(const TimeSeries& ts, const WindowConfig& cfg);

/// Evaluates the configured measures over every window. Windows are
/// independent tasks and may run on any number of threads; the result is
/// bit-identical regardless.
MeasureSeries windowed_measures(const TimeSeries& ts, const WindowConfig& cfg);

/// Unbiased sample variance per window (cfg.measures is ignored).
MeasureSeries variance_series(const TimeSeries& ts, WindowConfig cfg);

/// Lag-1 sample autocorrelation per window (cfg.measures is ignored).
MeasureSeries autocorr1_series(const TimeSeries& ts, WindowConfig cfg);

/// Markets-by-centers table of one measure, rows sorted by how much the
/// measure moved over time (max - min, ascending; ties by label).
struct HeatmapTable {
    Measure measure = Measure::Det;
    std::vector<std::string> labels;            // row order after sorting
    std::vector<std::size_t> centers;
    std::optional<Date> start_date;
    std::vector<std::vector<double>> rows;      // rows[i][j]: label i at center j
};

HeatmapTable heatmap_table(std::span<const MeasureSeries> series, Measure measure);

} // namespace rqa
