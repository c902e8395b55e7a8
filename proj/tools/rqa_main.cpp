// Command-line front end: ingestion, preprocessing, full-series analysis,
// sliding-window measure series, trend tests and file exports.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"

#include "rqa/csv.hpp"
#include "rqa/embedding.hpp"
#include "rqa/error.hpp"
#include "rqa/network.hpp"
#include "rqa/preprocess.hpp"
#include "rqa/report_io.hpp"
#include "rqa/trend.hpp"
#include "rqa/window.hpp"

namespace fs = std::filesystem;
using namespace rqa;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitConfig = 2;

struct Options {
    std::vector<std::string> inputs;
    std::vector<std::string> labels;
    std::string out_dir = ".";
    std::string format = "csv";
    std::string calendar = "daily";
    std::string norm = "euclidean";
    int jobs = 0;
    int detrend_degree = 3;
    double epsilon = 0.25;
    int l_min = 2;
    int v_min = 2;
    bool include_loi = false;
    int max_lag = 1000;
    int embed_m = 0; // 0 = estimate via FNN
    int tau = 0;     // 0 = estimate via ACF 1/e
    int m_max = 10;

    // windows
    std::string preset;
    int window_length = 0;
    int window_step = 0;
    bool embedded = false;
    bool no_renormalize = false;
    std::vector<std::string> measure_names;

    // trend
    std::vector<std::string> ranges;
    double alpha = 0.05;

    Norm norm_tag() const { return norm == "maximum" ? Norm::Maximum : Norm::Euclidean; }
    bool json() const { return format == "json"; }
};

std::string derive_label(const std::string& path) { return fs::path(path).stem().string(); }

void add_common_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("-i,--input", opt.inputs, "Input CSV file (date,close); repeatable")
        ->required();
    cmd->add_option("-l,--label", opt.labels,
                    "Label per input (defaults to the file stem); repeatable");
    cmd->add_option("-o,--out-dir", opt.out_dir, "Output directory");
    cmd->add_option("--format", opt.format, "csv, or json to also write JSON mirrors")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("-j,--jobs", opt.jobs, "Worker thread bound (default: all cores)");
    cmd->add_option("--calendar", opt.calendar,
                    "Forward-fill calendar: daily, weekdays or none")
        ->check(CLI::IsMember({"daily", "weekdays", "none"}));
    cmd->add_option("--detrend-degree", opt.detrend_degree, "Polynomial detrend degree")
        ->check(CLI::Range(0, 10));
    cmd->add_option("-e,--epsilon", opt.epsilon, "Recurrence threshold");
    cmd->add_option("--norm", opt.norm, "Distance norm")
        ->check(CLI::IsMember({"euclidean", "maximum"}));
    cmd->add_option("--lmin", opt.l_min, "Minimum diagonal line length for DET");
    cmd->add_option("--vmin", opt.v_min, "Minimum vertical line length for LAM");
    cmd->add_flag("--include-loi", opt.include_loi,
                  "Keep the line of identity in diagonal statistics");
    cmd->add_option("--max-lag", opt.max_lag, "Largest lag tried for the ACF 1/e delay");
    cmd->add_option("--embed-m", opt.embed_m, "Force the embedding dimension");
    cmd->add_option("--tau", opt.tau, "Force the embedding delay");
    cmd->add_option("--m-max", opt.m_max, "Largest dimension tried by FNN");
    cmd->set_config("--config", "", "Key-value config file; command-line flags win");
}

struct PreparedMarket {
    std::string label;
    TimeSeries detrended; // detrended, pre-deviate (VAR/AC1 operate on this)
    TimeSeries deviate;   // uniform deviate of the detrended series
    std::string error;    // non-empty: this market failed
};

PreparedMarket prepare_market(const std::string& path, const std::string& label,
                              const Options& opt) {
    PreparedMarket market;
    market.label = label;
    try {
        const RawSeries raw = read_price_csv(path, label);
        TimeSeries filled;
        if (opt.calendar == "none") {
            if (raw.size() == 0) throw Error(Errc::EmptySeries, "no observations for " + label);
            raw.validate();
            filled.values = raw.prices;
            filled.label = label;
        } else if (opt.calendar == "weekdays") {
            if (raw.size() == 0) throw Error(Errc::EmptySeries, "no observations for " + label);
            const auto cal = weekday_calendar(raw.dates.front(), raw.dates.back());
            filled = forward_fill(raw, cal);
            filled.start_date.reset(); // indices are business days, not calendar days
        } else {
            if (raw.size() == 0) throw Error(Errc::EmptySeries, "no observations for " + label);
            const auto cal = daily_calendar(raw.dates.front(), raw.dates.back());
            filled = forward_fill(raw, cal);
        }
        market.detrended = detrend(filled, opt.detrend_degree);
        market.deviate = uniform_deviate(market.detrended);
    } catch (const Error& e) {
        market.error = e.what();
    }
    return market;
}

std::vector<std::pair<std::string, std::string>> input_pairs(const Options& opt) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i < opt.inputs.size(); ++i)
        pairs.emplace_back(opt.inputs[i], i < opt.labels.size() ? opt.labels[i]
                                                                : derive_label(opt.inputs[i]));
    return pairs;
}

int validate_common(const Options& opt) {
    if (!(opt.epsilon > 0.0)) {
        std::cerr << "error: epsilon must be positive\n";
        return kExitConfig;
    }
    if (!opt.labels.empty() && opt.labels.size() != opt.inputs.size()) {
        std::cerr << "error: got " << opt.labels.size() << " labels for " << opt.inputs.size()
                  << " inputs\n";
        return kExitConfig;
    }
    std::set<std::string> distinct(opt.inputs.begin(), opt.inputs.end());
    if (distinct.size() != opt.inputs.size()) {
        std::cerr << "error: duplicate input paths\n";
        return kExitConfig;
    }
    std::set<std::string> labels;
    for (const auto& [path, label] : input_pairs(opt))
        if (!labels.insert(label).second) {
            std::cerr << "error: duplicate label '" << label << "'\n";
            return kExitConfig;
        }
    if (opt.jobs < 0) {
        std::cerr << "error: --jobs must be non-negative\n";
        return kExitConfig;
    }
    if (opt.jobs > 0) omp_set_num_threads(opt.jobs);
    std::error_code ec;
    fs::create_directories(opt.out_dir, ec);
    if (ec) {
        std::cerr << "error: cannot create output directory " << opt.out_dir << "\n";
        return kExitConfig;
    }
    return kExitOk;
}

MetaHeader common_meta(const Options& opt, const std::string& command) {
    MetaHeader meta;
    meta.emplace_back("command", command);
    meta.emplace_back("calendar", opt.calendar);
    meta.emplace_back("detrend_degree", std::to_string(opt.detrend_degree));
    meta.emplace_back("epsilon", fmt12(opt.epsilon));
    meta.emplace_back("norm", opt.norm);
    meta.emplace_back("l_min", std::to_string(opt.l_min));
    meta.emplace_back("v_min", std::to_string(opt.v_min));
    meta.emplace_back("include_loi", opt.include_loi ? "1" : "0");
    return meta;
}

void write_text_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
    std::ofstream out(path, std::ios::binary); // \n endings everywhere
    if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
    body(out);
}

// ---------------------------------------------------------------- analyze --

int cmd_analyze(const Options& opt) {
    if (int rc = validate_common(opt)) return rc;
    const auto pairs = input_pairs(opt);
    std::vector<AnalysisRow> rows(pairs.size());

#pragma omp parallel for schedule(dynamic) if (pairs.size() > 1)
    for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
        AnalysisRow& row = rows[idx];
        row.label = pairs[idx].second;
        PreparedMarket market = prepare_market(pairs[idx].first, pairs[idx].second, opt);
        if (!market.error.empty()) {
            row.status = market.error;
            continue;
        }
        try {
            const TimeSeries& series = market.deviate;
            row.n_points = series.size();
            row.delay = opt.tau > 0 ? opt.tau : estimate_delay(series, opt.max_lag);
            if (opt.embed_m > 0) {
                row.dimension = opt.embed_m;
                row.dimension_forced = true;
            } else {
                const FnnResult fnn = fnn_dimension(series, row.delay, opt.m_max);
                row.dimension = fnn.dimension;
                row.fnn_saturated = fnn.saturated;
            }
            const auto traj = embed(series, {row.dimension, row.delay});
            const auto rm = recurrence_matrix(traj, opt.epsilon, opt.norm_tag());
            row.det = det(rm, opt.l_min, opt.include_loi);
            row.lam = lam(rm, opt.v_min);
            const auto net = to_network(rm);
            row.cc = clustering_coefficient(net);
            const auto paths = characteristic_path_length(net);
            row.cpl = paths.cpl;
            row.reachable_fraction = paths.reachable_fraction;
            row.components = paths.components;
        } catch (const Error& e) {
            row.status = e.what();
        }
    }

    MetaHeader meta = common_meta(opt, "analyze");
    meta.emplace_back("max_lag", std::to_string(opt.max_lag));
    meta.emplace_back("embed_m", opt.embed_m > 0 ? std::to_string(opt.embed_m) : "fnn");
    meta.emplace_back("m_max", std::to_string(opt.m_max));

    write_text_file(fs::path(opt.out_dir) / "analysis.csv",
                    [&](std::ostream& out) { write_analysis_csv(out, meta, rows); });
    if (opt.json())
        write_text_file(fs::path(opt.out_dir) / "analysis.json",
                        [&](std::ostream& out) { out << analysis_json(meta, rows); });

    int failures = 0;
    for (const AnalysisRow& row : rows)
        if (!row.status.empty()) {
            ++failures;
            std::cerr << row.label << ": " << row.status << "\n";
        }
    return failures == 0 ? kExitOk : kExitPartial;
}

// ---------------------------------------------------------------- windows --

std::vector<Measure> resolve_measures(const Options& opt, std::vector<Measure> defaults,
                                      std::string& error) {
    if (opt.measure_names.empty()) return defaults;
    std::vector<Measure> measures;
    for (const std::string& name : opt.measure_names) {
        const auto m = parse_measure(name);
        if (!m) {
            error = "unknown measure '" + name + "'";
            return {};
        }
        if (std::find(measures.begin(), measures.end(), *m) == measures.end())
            measures.push_back(*m);
    }
    return measures;
}

int cmd_windows(const Options& opt) {
    if (int rc = validate_common(opt)) return rc;

    const bool has_preset = !opt.preset.empty();
    const bool has_explicit = opt.window_length > 0 || opt.window_step > 0;
    if (has_preset == has_explicit) {
        std::cerr << "error: give exactly one of --preset or --window-length/--window-step\n";
        return kExitConfig;
    }
    if (has_explicit && (opt.window_length <= 0 || opt.window_step <= 0)) {
        std::cerr << "error: explicit windows need both --window-length and --window-step\n";
        return kExitConfig;
    }

    WindowConfig base;
    std::vector<Measure> default_measures;
    bool embedded = false;
    if (has_preset) {
        if (opt.preset == "gfc") {
            base.length = 1500;
            base.step = 100;
            embedded = true;
            default_measures = {Measure::Det, Measure::Lam, Measure::Cc, Measure::Cpl};
        } else if (opt.preset == "short") {
            base.length = 250;
            base.step = 10;
            default_measures = {Measure::Det, Measure::Lam};
        } else {
            std::cerr << "error: unknown preset '" << opt.preset << "' (gfc or short)\n";
            return kExitConfig;
        }
    } else {
        base.length = opt.window_length;
        base.step = opt.window_step;
        embedded = opt.embedded;
        default_measures = {Measure::Det, Measure::Lam};
    }
    base.epsilon = opt.epsilon;
    base.norm = opt.norm_tag();
    base.l_min = opt.l_min;
    base.v_min = opt.v_min;
    base.include_loi = opt.include_loi;
    base.renormalize = !opt.no_renormalize;

    std::string measure_error;
    base.measures = resolve_measures(opt, default_measures, measure_error);
    if (!measure_error.empty()) {
        std::cerr << "error: " << measure_error << "\n";
        return kExitConfig;
    }

    const auto pairs = input_pairs(opt);
    std::vector<MeasureSeries> all_series(pairs.size());
    std::vector<std::string> failures(pairs.size());
    std::vector<std::string> embed_notes(pairs.size());

#pragma omp parallel for schedule(dynamic) if (pairs.size() > 1)
    for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
        PreparedMarket market = prepare_market(pairs[idx].first, pairs[idx].second, opt);
        if (!market.error.empty()) {
            failures[idx] = market.error;
            continue;
        }
        try {
            WindowConfig cfg = base;
            if (embedded) {
                const int m = opt.embed_m > 0 ? opt.embed_m : 4;
                const int tau =
                    opt.tau > 0 ? opt.tau : estimate_delay(market.deviate, opt.max_lag);
                cfg.embedding = EmbeddingParams{m, tau};
                embed_notes[idx] = "m=" + std::to_string(m) + " tau=" + std::to_string(tau);
            }
            for (const std::string& warning : cfg.validate())
#pragma omp critical(rqa_cli_warn)
                std::cerr << "warning: " << market.label << ": " << warning << "\n";
            // The engine sees the detrended series: VAR/AC1 need pre-deviate
            // values, and the recurrence measures re-normalize per window.
            all_series[idx] = windowed_measures(market.detrended, cfg);
        } catch (const Error& e) {
            failures[idx] = e.what();
        }
    }

    MetaHeader meta = common_meta(opt, "windows");
    meta.emplace_back("preset", has_preset ? opt.preset : "explicit");
    meta.emplace_back("window_length", std::to_string(base.length));
    meta.emplace_back("window_step", std::to_string(base.step));
    meta.emplace_back("embedded", embedded ? "1" : "0");
    meta.emplace_back("renormalize", base.renormalize ? "1" : "0");
    {
        std::string names;
        for (Measure m : base.measures) names += std::string(names.empty() ? "" : "+") + to_string(m);
        meta.emplace_back("measures", names);
    }
    for (std::size_t idx = 0; idx < pairs.size(); ++idx)
        if (!embed_notes[idx].empty())
            meta.emplace_back("embedding." + pairs[idx].second, embed_notes[idx]);

    std::vector<MeasureSeries> ok_series;
    for (std::size_t idx = 0; idx < pairs.size(); ++idx)
        if (failures[idx].empty()) ok_series.push_back(std::move(all_series[idx]));

    write_text_file(fs::path(opt.out_dir) / "measures_long.csv", [&](std::ostream& out) {
        write_measures_long_csv(out, meta, ok_series);
    });
    if (opt.json())
        write_text_file(fs::path(opt.out_dir) / "measures_long.json", [&](std::ostream& out) {
            out << measures_long_json(meta, ok_series);
        });

    if (!ok_series.empty()) {
        bool comparable = true;
        for (const MeasureSeries& s : ok_series)
            comparable = comparable && s.config.compatible_with(ok_series.front().config) &&
                         s.centers == ok_series.front().centers;
        if (comparable) {
            for (Measure m : base.measures) {
                const HeatmapTable table = heatmap_table(ok_series, m);
                write_text_file(fs::path(opt.out_dir) /
                                    (std::string("heatmap_") + to_string(m) + ".csv"),
                                [&](std::ostream& out) { write_heatmap_csv(out, meta, table); });
            }
        } else {
            std::cerr << "note: market series have unequal spans; heat maps skipped\n";
        }
        for (const MeasureSeries& s : ok_series)
            for (Measure m : base.measures)
                write_text_file(fs::path(opt.out_dir) / ("plot_" + s.label + "_" +
                                                         to_string(m) + ".dat"),
                                [&](std::ostream& out) {
                                    write_gnuplot_columns(out, meta, s, m);
                                });
    }

    int failed = 0;
    for (std::size_t idx = 0; idx < pairs.size(); ++idx)
        if (!failures[idx].empty()) {
            ++failed;
            std::cerr << pairs[idx].second << ": " << failures[idx] << "\n";
        }
    return failed == 0 ? kExitOk : kExitPartial;
}

// ------------------------------------------------------------------ trend --

struct RangeSpec {
    std::string name;
    std::optional<Date> date_begin, date_end;
    std::size_t index_begin = 0, index_end = 0;
    bool by_date = false;
};

std::optional<RangeSpec> parse_range(const std::string& text) {
    RangeSpec spec;
    std::string body = text;
    if (const auto eq = body.find('='); eq != std::string::npos) {
        spec.name = body.substr(0, eq);
        body = body.substr(eq + 1);
    }
    const auto colon = body.find(':');
    if (colon == std::string::npos) return std::nullopt;
    const std::string a = body.substr(0, colon), b = body.substr(colon + 1);
    const auto da = parse_iso_date(a), db = parse_iso_date(b);
    if (da && db) {
        if (*db < *da) return std::nullopt;
        spec.by_date = true;
        spec.date_begin = da;
        spec.date_end = db;
        if (spec.name.empty()) spec.name = a + ".." + b;
        return spec;
    }
    try {
        spec.index_begin = std::stoul(a);
        spec.index_end = std::stoul(b);
    } catch (...) {
        return std::nullopt;
    }
    if (spec.index_end < spec.index_begin) return std::nullopt;
    if (spec.name.empty()) spec.name = a + ".." + b;
    return spec;
}

int cmd_trend(const Options& opt) {
    if (int rc = validate_common(opt)) return rc;

    std::vector<RangeSpec> ranges;
    for (const std::string& text : opt.ranges) {
        const auto spec = parse_range(text);
        if (!spec) {
            std::cerr << "error: bad --range '" << text
                      << "' (want [name=]start:end with ISO dates or indices)\n";
            return kExitConfig;
        }
        ranges.push_back(*spec);
    }
    if (ranges.empty()) {
        RangeSpec whole;
        whole.name = "all";
        whole.index_begin = 0;
        whole.index_end = std::numeric_limits<std::size_t>::max();
        ranges.push_back(whole);
    }

    std::string measure_error;
    std::vector<Measure> wanted = resolve_measures(
        opt, {kAllMeasures.begin(), kAllMeasures.end()}, measure_error);
    if (!measure_error.empty()) {
        std::cerr << "error: " << measure_error << "\n";
        return kExitConfig;
    }

    // Gather records per (label, measure), from all input files.
    std::vector<MeasureRecord> records;
    for (const std::string& path : opt.inputs) {
        try {
            auto batch = read_measures_long_csv(path);
            records.insert(records.end(), batch.begin(), batch.end());
        } catch (const Error& e) {
            std::cerr << e.what() << "\n";
            return kExitPartial;
        }
    }

    std::vector<std::string> label_order;
    for (const MeasureRecord& rec : records)
        if (std::find(label_order.begin(), label_order.end(), rec.label) == label_order.end())
            label_order.push_back(rec.label);

    std::vector<TrendRow> rows;
    for (const std::string& label : label_order) {
        for (Measure measure : wanted) {
            std::vector<const MeasureRecord*> column;
            for (const MeasureRecord& rec : records)
                if (rec.label == label && rec.measure == measure) column.push_back(&rec);
            if (column.empty()) continue;
            std::sort(column.begin(), column.end(),
                      [](const MeasureRecord* a, const MeasureRecord* b) {
                          return a->center < b->center;
                      });
            for (const RangeSpec& range : ranges) {
                TrendRow row;
                row.label = label;
                row.measure = measure;
                row.range_name = range.name;
                if (range.by_date) {
                    row.range_start = format_iso_date(*range.date_begin);
                    row.range_end = format_iso_date(*range.date_end);
                } else {
                    row.range_start = std::to_string(range.index_begin);
                    row.range_end = range.index_end == std::numeric_limits<std::size_t>::max()
                                        ? "end"
                                        : std::to_string(range.index_end);
                }
                std::vector<double> values;
                for (const MeasureRecord* rec : column) {
                    bool inside;
                    if (range.by_date)
                        inside = rec->center_date && *rec->center_date >= *range.date_begin &&
                                 *rec->center_date <= *range.date_end;
                    else
                        inside = rec->center >= range.index_begin &&
                                 rec->center <= range.index_end;
                    if (!inside) continue;
                    if (rec->ok)
                        values.push_back(rec->value);
                    else
                        ++row.n_dropped;
                }
                row.n_used = values.size();
                try {
                    row.result = mann_kendall_modified(values, opt.alpha);
                    if (row.n_used < 10)
                        std::cerr << "warning: " << label << "/" << to_string(measure) << " "
                                  << range.name << ": only " << row.n_used << " points\n";
                } catch (const Error& e) {
                    row.status = to_string(e.code());
                }
                rows.push_back(std::move(row));
            }
        }
    }

    MetaHeader meta = common_meta(opt, "trend");
    meta.emplace_back("alpha", fmt12(opt.alpha));

    write_text_file(fs::path(opt.out_dir) / "trend.csv",
                    [&](std::ostream& out) { write_trend_csv(out, meta, rows); });
    if (opt.json())
        write_text_file(fs::path(opt.out_dir) / "trend.json",
                        [&](std::ostream& out) { out << trend_json(meta, rows); });
    return kExitOk;
}

// ---------------------------------------------------------------- exports --

int cmd_export(const Options& opt, bool network) {
    if (int rc = validate_common(opt)) return rc;
    const auto pairs = input_pairs(opt);
    int failed = 0;
    for (const auto& [path, label] : pairs) {
        PreparedMarket market = prepare_market(path, label, opt);
        if (!market.error.empty()) {
            ++failed;
            std::cerr << label << ": " << market.error << "\n";
            continue;
        }
        try {
            const TimeSeries& series = market.deviate;
            const int tau = opt.tau > 0 ? opt.tau : estimate_delay(series, opt.max_lag);
            const int m = opt.embed_m > 0 ? opt.embed_m
                                          : fnn_dimension(series, tau, opt.m_max).dimension;
            const auto rm =
                recurrence_matrix(embed(series, {m, tau}), opt.epsilon, opt.norm_tag());

            MetaHeader meta = common_meta(opt, network ? "export-network" : "export-rp");
            meta.emplace_back("label", label);
            meta.emplace_back("n", std::to_string(rm.size()));
            meta.emplace_back("m", std::to_string(m));
            meta.emplace_back("tau", std::to_string(tau));

            if (network) {
                const auto net = to_network(rm);
                write_text_file(fs::path(opt.out_dir) / (label + "_edges.csv"),
                                [&](std::ostream& out) {
                                    write_comment_header(out, meta);
                                    out << "i,j\n";
                                    for (std::size_t i = 0; i < net.size(); ++i)
                                        for (std::size_t j = i + 1; j < net.size(); ++j)
                                            if (net.adjacency.get(i, j))
                                                out << i << ',' << j << '\n';
                                });
            } else {
                std::ofstream bin(fs::path(opt.out_dir) / (label + ".rpv1"), std::ios::binary);
                if (!bin) throw Error(Errc::IoError, "cannot write " + label + ".rpv1");
                write_rp_binary(rm, bin);
                write_text_file(fs::path(opt.out_dir) / (label + "_rp_coords.csv"),
                                [&](std::ostream& out) {
                                    write_comment_header(out, meta);
                                    write_rp_coords(rm, out);
                                });
            }
        } catch (const Error& e) {
            ++failed;
            std::cerr << label << ": " << e.what() << "\n";
        }
    }
    return failed == 0 ? kExitOk : kExitPartial;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Recurrence-based nonlinear time-series analysis"};
    app.require_subcommand(1);

    Options opt;
    CLI::App* analyze = app.add_subcommand(
        "analyze", "Full-series recurrence and network measures per market");
    add_common_options(analyze, opt);

    CLI::App* windows = app.add_subcommand(
        "windows", "Sliding-window measure series, heat maps and plot files");
    add_common_options(windows, opt);
    windows->add_option("--preset", opt.preset, "gfc (1500/100, embedded) or short (250/10)");
    windows->add_option("--window-length", opt.window_length, "Explicit window length");
    windows->add_option("--window-step", opt.window_step, "Explicit window step");
    windows->add_flag("--embedded", opt.embedded, "Embed windows (explicit config only)");
    windows->add_flag("--no-renormalize", opt.no_renormalize,
                      "Skip the per-window uniform deviate");
    windows->add_option("--measures", opt.measure_names,
                        "Measures to compute (DET LAM CC CPL VAR AC1)");

    CLI::App* trend = app.add_subcommand(
        "trend", "Mann-Kendall trend tests over measure series produced by `windows`");
    add_common_options(trend, opt);
    trend->add_option("--range", opt.ranges,
                      "[name=]start:end (ISO dates or center indices); repeatable");
    trend->add_option("--alpha", opt.alpha, "Significance level");
    trend->add_option("--measures", opt.measure_names, "Measures to test");

    CLI::App* export_rp = app.add_subcommand(
        "export-rp", "Write the recurrence plot as RPV1 binary plus coordinate CSV");
    add_common_options(export_rp, opt);

    CLI::App* export_net = app.add_subcommand(
        "export-network", "Write the recurrence network as an edge-list CSV");
    add_common_options(export_net, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return cmd_analyze(opt);
        if (windows->parsed()) return cmd_windows(opt);
        if (trend->parsed()) return cmd_trend(opt);
        if (export_rp->parsed()) return cmd_export(opt, false);
        if (export_net->parsed()) return cmd_export(opt, true);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPartial;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPartial;
    }
    return kExitConfig;
}
