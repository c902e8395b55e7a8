#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rqa/trend.hpp"
#include "rqa/window.hpp"

namespace rqa {

/// Fixed numeric formatting for all emitted files: shortest representation
/// within 12 significant digits. Keeps golden outputs stable across platforms
/// and thread counts.
std::string fmt12(double v);

using MetaHeader = std::vector<std::pair<std::string, std::string>>;

/// `# key = value` lines carrying the effective configuration; every text
/// output starts with one of these blocks.
void write_comment_header(std::ostream& out, const MetaHeader& meta);

struct AnalysisRow {
    std::string label;
    std::size_t n_points = 0;
    int delay = 0;
    int dimension = 0;
    bool dimension_forced = false;
    bool fnn_saturated = false;
    double det = 0, lam = 0, cc = 0, cpl = 0;
    double reachable_fraction = 0;
    std::size_t components = 0;
    std::string status; // empty = ok, otherwise the per-market error
};

void write_analysis_csv(std::ostream& out, const MetaHeader& meta, std::span<const AnalysisRow> rows);
std::string analysis_json(const MetaHeader& meta, std::span<const AnalysisRow> rows);

/// Long format: label,center_index,center_date,measure,value,status.
void write_measures_long_csv(std::ostream& out, const MetaHeader& meta,
                             std::span<const MeasureSeries> series);
std::string measures_long_json(const MetaHeader& meta, std::span<const MeasureSeries> series);

/// One row read back from the long CSV.
struct MeasureRecord {
    std::string label;
    std::size_t center = 0;
    std::optional<Date> center_date;
    Measure measure = Measure::Det;
    double value = 0;
    bool ok = false;
};

std::vector<MeasureRecord> read_measures_long_csv(const std::string& path);

void write_heatmap_csv(std::ostream& out, const MetaHeader& meta, const HeatmapTable& table);

/// Gnuplot-friendly columns for one measure: center_index, center_date, value
/// separated by spaces, with missing values written as nan.
void write_gnuplot_columns(std::ostream& out, const MetaHeader& meta, const MeasureSeries& series,
                           Measure measure);

struct TrendRow {
    std::string label;
    Measure measure = Measure::Det;
    std::string range_name;
    std::string range_start, range_end;
    std::size_t n_used = 0, n_dropped = 0;
    TrendResult result;
    std::string status; // empty = ok
};

void write_trend_csv(std::ostream& out, const MetaHeader& meta, std::span<const TrendRow> rows);
std::string trend_json(const MetaHeader& meta, std::span<const TrendRow> rows);

} // namespace rqa
