#include "rqa/window.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "rqa/error.hpp"
#include "rqa/network.hpp"
#include "rqa/preprocess.hpp"

namespace rqa {

namespace {
constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
}

const char* to_string(Measure m) noexcept {
    switch (m) {
        case Measure::Det: return "DET";
        case Measure::Lam: return "LAM";
        case Measure::Cc: return "CC";
        case Measure::Cpl: return "CPL";
        case Measure::Var: return "VAR";
        case Measure::Ac1: return "AC1";
    }
    return "?";
}

std::optional<Measure> parse_measure(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (Measure m : kAllMeasures)
        if (upper == to_string(m)) return m;
    return std::nullopt;
}

std::vector<std::string> WindowConfig::validate() const {
    if (length < 2) throw Error(Errc::InvalidInput, "window length must be at least 2");
    if (step < 1) throw Error(Errc::InvalidInput, "window step must be positive");
    if (!(epsilon > 0.0)) throw Error(Errc::InvalidInput, "epsilon must be positive");
    if (l_min < 2 || v_min < 2) throw Error(Errc::InvalidInput, "l_min and v_min must be >= 2");
    if (embedding) {
        if (embedding->dimension < 1 || embedding->delay < 1)
            throw Error(Errc::InvalidInput, "embedding dimension and delay must be positive");
        const long points = static_cast<long>(length) -
                            static_cast<long>(embedding->dimension - 1) * embedding->delay;
        if (points < 10)
            throw Error(Errc::InsufficientData,
                        "window of " + std::to_string(length) + " leaves only " +
                            std::to_string(points) + " embedded points (need >= 10)");
    }
    std::vector<std::string> warnings;
    if (length < 2 * step)
        warnings.push_back("window length " + std::to_string(length) +
                           " is smaller than twice the step " + std::to_string(step) +
                           "; coverage will be sparse");
    return warnings;
}

bool WindowConfig::compatible_with(const WindowConfig& other) const {
    const bool embed_equal =
        embedding.has_value() == other.embedding.has_value() &&
        (!embedding || (embedding->dimension == other.embedding->dimension &&
                        embedding->delay == other.embedding->delay));
    return length == other.length && step == other.step && embed_equal &&
           epsilon == other.epsilon && renormalize == other.renormalize &&
           l_min == other.l_min && v_min == other.v_min && include_loi == other.include_loi &&
           norm == other.norm;
}

const MeasureColumn* MeasureSeries::column(Measure m) const {
    for (std::size_t i = 0; i < config.measures.size(); ++i)
        if (config.measures[i] == m) return &columns[i];
    return nullptr;
}

std::optional<Date> MeasureSeries::center_date(std::size_t idx) const {
    if (!start_date) return std::nullopt;
    return *start_date + std::chrono::days{static_cast<long>(centers[idx])};
}

std::vector<WindowSlice> sliding_windows(const TimeSeries& ts, const WindowConfig& cfg) {
    cfg.validate();
    const std::size_t n = ts.size();
    if (n < static_cast<std::size_t>(cfg.length))
        throw Error(Errc::InsufficientData, "series of length " + std::to_string(n) +
                                                " is shorter than one window of " +
                                                std::to_string(cfg.length));
    std::vector<WindowSlice> windows;
    for (std::size_t start = 0; start + cfg.length <= n; start += cfg.step)
        windows.push_back({start, std::span<const double>(ts.values).subspan(start, cfg.length)});
    return windows;
}

namespace {

struct Cell {
    double value = kMissing;
    std::string status;
};

double window_variance(std::span<const double> w) {
    double mean = 0.0;
    for (double v : w) mean += v;
    mean /= static_cast<double>(w.size());
    double ss = 0.0;
    for (double v : w) ss += (v - mean) * (v - mean);
    return ss / static_cast<double>(w.size() - 1);
}

double window_ac1(std::span<const double> w) {
    double mean = 0.0;
    for (double v : w) mean += v;
    mean /= static_cast<double>(w.size());
    double denom = 0.0, num = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double d = w[i] - mean;
        denom += d * d;
        if (i + 1 < w.size()) num += d * (w[i + 1] - mean);
    }
    if (denom == 0.0)
        throw Error(Errc::DegenerateVariance, "constant window has no autocorrelation");
    return num / denom;
}

bool needs_recurrence(Measure m) {
    return m == Measure::Det || m == Measure::Lam || m == Measure::Cc || m == Measure::Cpl;
}

void compute_window(std::span<const double> slice, const WindowConfig& cfg,
                    std::span<Cell> out) {
    bool any_recurrence = false;
    for (std::size_t mi = 0; mi < cfg.measures.size(); ++mi) {
        const Measure m = cfg.measures[mi];
        if (needs_recurrence(m)) {
            any_recurrence = true;
            continue;
        }
        try {
            out[mi].value = m == Measure::Var ? window_variance(slice) : window_ac1(slice);
        } catch (const Error& e) {
            out[mi].status = to_string(e.code());
        }
    }
    if (!any_recurrence) return;

    try {
        TimeSeries w;
        w.values.assign(slice.begin(), slice.end());
        if (cfg.renormalize) w = uniform_deviate(w);
        const EmbeddedTrajectory traj =
            embed(w, cfg.embedding.value_or(EmbeddingParams{1, 1}));
        const RecurrenceMatrix rm = recurrence_matrix(traj, cfg.epsilon, cfg.norm);

        std::optional<RecurrenceNetwork> net;
        for (std::size_t mi = 0; mi < cfg.measures.size(); ++mi) {
            const Measure m = cfg.measures[mi];
            if (!needs_recurrence(m)) continue;
            try {
                switch (m) {
                    case Measure::Det:
                        out[mi].value = det(rm, cfg.l_min, cfg.include_loi);
                        break;
                    case Measure::Lam:
                        out[mi].value = lam(rm, cfg.v_min);
                        break;
                    case Measure::Cc:
                    case Measure::Cpl:
                        if (!net) net = to_network(rm);
                        out[mi].value = m == Measure::Cc
                                            ? clustering_coefficient(*net)
                                            : characteristic_path_length(*net).cpl;
                        break;
                    default:
                        break;
                }
            } catch (const Error& e) {
                out[mi].status = to_string(e.code());
            }
        }
    } catch (const Error& e) {
        // Shared recurrence stage failed: every recurrence measure is missing.
        for (std::size_t mi = 0; mi < cfg.measures.size(); ++mi)
            if (needs_recurrence(cfg.measures[mi])) out[mi].status = to_string(e.code());
    }
}

} // namespace

MeasureSeries windowed_measures(const TimeSeries& ts, const WindowConfig& cfg) {
    if (cfg.measures.empty()) throw Error(Errc::InvalidInput, "no measures requested");
    const std::vector<WindowSlice> windows = sliding_windows(ts, cfg);
    const std::size_t nw = windows.size();
    const std::size_t nm = cfg.measures.size();

    std::vector<Cell> cells(nw * nm);
    // Windows are independent; cells are written by exactly one task each, so
    // the outcome does not depend on the schedule or thread count.
#pragma omp parallel for schedule(dynamic)
    for (std::size_t wi = 0; wi < nw; ++wi)
        compute_window(windows[wi].values, cfg, std::span<Cell>(cells).subspan(wi * nm, nm));

    MeasureSeries series;
    series.label = ts.label;
    series.start_date = ts.start_date;
    series.config = cfg;
    series.centers.resize(nw);
    series.columns.assign(nm, {});
    for (auto& col : series.columns) {
        col.values.resize(nw);
        col.status.resize(nw);
    }
    for (std::size_t wi = 0; wi < nw; ++wi) {
        series.centers[wi] = windows[wi].start + static_cast<std::size_t>(cfg.length / 2);
        for (std::size_t mi = 0; mi < nm; ++mi) {
            series.columns[mi].values[wi] = cells[wi * nm + mi].value;
            series.columns[mi].status[wi] = std::move(cells[wi * nm + mi].status);
        }
    }
    return series;
}

MeasureSeries variance_series(const TimeSeries& ts, WindowConfig cfg) {
    cfg.measures = {Measure::Var};
    return windowed_measures(ts, cfg);
}

MeasureSeries autocorr1_series(const TimeSeries& ts, WindowConfig cfg) {
    cfg.measures = {Measure::Ac1};
    return windowed_measures(ts, cfg);
}

HeatmapTable heatmap_table(std::span<const MeasureSeries> series, Measure measure) {
    if (series.empty()) throw Error(Errc::InvalidInput, "no measure series given");
    for (const MeasureSeries& s : series) {
        if (!s.config.compatible_with(series.front().config))
            throw Error(Errc::ConfigMismatch, "window configs differ between " +
                                                  series.front().label + " and " + s.label);
        if (s.centers != series.front().centers)
            throw Error(Errc::ConfigMismatch,
                        "window centers differ between " + series.front().label + " and " +
                            s.label + " (unequal series lengths)");
        if (!s.column(measure))
            throw Error(Errc::ConfigMismatch,
                        s.label + " has no " + std::string(to_string(measure)) + " column");
    }

    struct Entry {
        double score;
        const MeasureSeries* s;
    };
    std::vector<Entry> entries;
    for (const MeasureSeries& s : series) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (double v : s.column(measure)->values) {
            if (std::isnan(v)) continue;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        entries.push_back({hi >= lo ? hi - lo : 0.0, &s});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.score != b.score) return a.score < b.score;
        return a.s->label < b.s->label;
    });

    HeatmapTable table;
    table.measure = measure;
    table.centers = series.front().centers;
    table.start_date = series.front().start_date;
    for (const Entry& e : entries) {
        table.labels.push_back(e.s->label);
        table.rows.push_back(e.s->column(measure)->values);
    }
    return table;
}

} // namespace rqa
