#include "rqa/report_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>

#include "json.hpp"
#include "rqa/error.hpp"

namespace rqa {

std::string fmt12(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_comment_header(std::ostream& out, const MetaHeader& meta) {
    for (const auto& [key, value] : meta) out << "# " << key << " = " << value << '\n';
}

namespace {

nlohmann::json meta_json(const MetaHeader& meta) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [key, value] : meta) j[key] = value;
    return j;
}

std::string date_or_empty(const std::optional<Date>& d) {
    return d ? format_iso_date(*d) : std::string{};
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

} // namespace

void write_analysis_csv(std::ostream& out, const MetaHeader& meta,
                        std::span<const AnalysisRow> rows) {
    write_comment_header(out, meta);
    out << "label,n_points,tau,m,m_source,fnn_saturated,det,lam,cc,cpl,"
           "reachable_fraction,components,status\n";
    for (const AnalysisRow& r : rows) {
        if (!r.status.empty()) {
            out << r.label << ",,,,,,,,,,,," << r.status << '\n';
            continue;
        }
        out << r.label << ',' << r.n_points << ',' << r.delay << ',' << r.dimension << ','
            << (r.dimension_forced ? "forced" : "fnn") << ',' << (r.fnn_saturated ? 1 : 0) << ','
            << fmt12(r.det) << ',' << fmt12(r.lam) << ',' << fmt12(r.cc) << ',' << fmt12(r.cpl)
            << ',' << fmt12(r.reachable_fraction) << ',' << r.components << ",ok\n";
    }
}

std::string analysis_json(const MetaHeader& meta, std::span<const AnalysisRow> rows) {
    nlohmann::json j;
    j["config"] = meta_json(meta);
    j["markets"] = nlohmann::json::array();
    for (const AnalysisRow& r : rows) {
        nlohmann::json m;
        m["label"] = r.label;
        if (!r.status.empty()) {
            m["status"] = r.status;
        } else {
            m["status"] = "ok";
            m["n_points"] = r.n_points;
            m["tau"] = r.delay;
            m["m"] = r.dimension;
            m["m_source"] = r.dimension_forced ? "forced" : "fnn";
            m["fnn_saturated"] = r.fnn_saturated;
            m["det"] = r.det;
            m["lam"] = r.lam;
            m["cc"] = r.cc;
            m["cpl"] = r.cpl;
            m["reachable_fraction"] = r.reachable_fraction;
            m["components"] = r.components;
        }
        j["markets"].push_back(std::move(m));
    }
    return j.dump(2) + "\n";
}

void write_measures_long_csv(std::ostream& out, const MetaHeader& meta,
                             std::span<const MeasureSeries> series) {
    write_comment_header(out, meta);
    out << "label,center_index,center_date,measure,value,status\n";
    for (const MeasureSeries& s : series) {
        for (std::size_t i = 0; i < s.centers.size(); ++i) {
            for (std::size_t mi = 0; mi < s.config.measures.size(); ++mi) {
                const double v = s.columns[mi].values[i];
                const std::string& status = s.columns[mi].status[i];
                out << s.label << ',' << s.centers[i] << ',' << date_or_empty(s.center_date(i))
                    << ',' << to_string(s.config.measures[mi]) << ','
                    << (status.empty() ? fmt12(v) : std::string{}) << ','
                    << (status.empty() ? "ok" : status) << '\n';
            }
        }
    }
}

std::string measures_long_json(const MetaHeader& meta, std::span<const MeasureSeries> series) {
    nlohmann::json j;
    j["config"] = meta_json(meta);
    j["series"] = nlohmann::json::array();
    for (const MeasureSeries& s : series) {
        nlohmann::json e;
        e["label"] = s.label;
        e["centers"] = s.centers;
        if (s.start_date) {
            std::vector<std::string> dates;
            for (std::size_t i = 0; i < s.centers.size(); ++i)
                dates.push_back(date_or_empty(s.center_date(i)));
            e["center_dates"] = dates;
        }
        for (std::size_t mi = 0; mi < s.config.measures.size(); ++mi) {
            nlohmann::json col;
            col["values"] = s.columns[mi].values; // NaN serializes as null
            col["status"] = s.columns[mi].status;
            e["measures"][to_string(s.config.measures[mi])] = std::move(col);
        }
        j["series"].push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

std::vector<MeasureRecord> read_measures_long_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IoError, "cannot open " + path);
    std::vector<MeasureRecord> records;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true; // column header row
            continue;
        }
        const std::vector<std::string> f = split_csv_row(line);
        if (f.size() != 6)
            throw Error(Errc::ParseError,
                        path + ":" + std::to_string(lineno) + ": expected 6 fields");
        MeasureRecord rec;
        rec.label = f[0];
        auto [p1, ec1] = std::from_chars(f[1].data(), f[1].data() + f[1].size(), rec.center);
        if (ec1 != std::errc{})
            throw Error(Errc::ParseError, path + ":" + std::to_string(lineno) + ": bad center index");
        if (!f[2].empty()) {
            rec.center_date = parse_iso_date(f[2]);
            if (!rec.center_date)
                throw Error(Errc::ParseError, path + ":" + std::to_string(lineno) + ": bad date");
        }
        const auto measure = parse_measure(f[3]);
        if (!measure)
            throw Error(Errc::ParseError,
                        path + ":" + std::to_string(lineno) + ": unknown measure " + f[3]);
        rec.measure = *measure;
        rec.ok = f[5] == "ok";
        if (rec.ok) {
            char* end = nullptr;
            rec.value = std::strtod(f[4].c_str(), &end);
            if (end != f[4].c_str() + f[4].size())
                throw Error(Errc::ParseError, path + ":" + std::to_string(lineno) + ": bad value");
        } else {
            rec.value = std::numeric_limits<double>::quiet_NaN();
        }
        records.push_back(std::move(rec));
    }
    return records;
}

void write_heatmap_csv(std::ostream& out, const MetaHeader& meta, const HeatmapTable& table) {
    write_comment_header(out, meta);
    if (table.start_date) {
        out << "# center_dates =";
        for (std::size_t c : table.centers)
            out << ' ' << format_iso_date(*table.start_date + std::chrono::days{static_cast<long>(c)});
        out << '\n';
    }
    out << "label";
    for (std::size_t c : table.centers) out << ',' << c;
    out << '\n';
    for (std::size_t r = 0; r < table.labels.size(); ++r) {
        out << table.labels[r];
        for (double v : table.rows[r]) out << ',' << (std::isnan(v) ? std::string{} : fmt12(v));
        out << '\n';
    }
}

void write_gnuplot_columns(std::ostream& out, const MetaHeader& meta, const MeasureSeries& series,
                           Measure measure) {
    write_comment_header(out, meta);
    out << "# center_index center_date " << to_string(measure) << '\n';
    const MeasureColumn* col = series.column(measure);
    if (!col) throw Error(Errc::ConfigMismatch, "series has no such measure column");
    for (std::size_t i = 0; i < series.centers.size(); ++i) {
        const auto date = series.center_date(i);
        out << series.centers[i] << ' ' << (date ? format_iso_date(*date) : "-") << ' '
            << fmt12(col->values[i]) << '\n';
    }
}

void write_trend_csv(std::ostream& out, const MetaHeader& meta, std::span<const TrendRow> rows) {
    write_comment_header(out, meta);
    out << "label,measure,range,start,end,n,n_dropped,S,tau,variance,z,p,direction,"
           "n_effective_ratio,status\n";
    for (const TrendRow& r : rows) {
        out << r.label << ',' << to_string(r.measure) << ',' << r.range_name << ','
            << r.range_start << ',' << r.range_end << ',';
        if (!r.status.empty()) {
            out << r.n_used << ',' << r.n_dropped << ",,,,,,,," << r.status << '\n';
            continue;
        }
        out << r.n_used << ',' << r.n_dropped << ',' << r.result.s << ',' << fmt12(r.result.tau)
            << ',' << fmt12(r.result.variance) << ',' << fmt12(r.result.z) << ','
            << fmt12(r.result.p) << ',' << to_string(r.result.direction) << ','
            << fmt12(r.result.n_effective_ratio) << ",ok\n";
    }
}

std::string trend_json(const MetaHeader& meta, std::span<const TrendRow> rows) {
    nlohmann::json j;
    j["config"] = meta_json(meta);
    j["trends"] = nlohmann::json::array();
    for (const TrendRow& r : rows) {
        nlohmann::json t;
        t["label"] = r.label;
        t["measure"] = to_string(r.measure);
        t["range"] = r.range_name;
        t["start"] = r.range_start;
        t["end"] = r.range_end;
        t["n"] = r.n_used;
        t["n_dropped"] = r.n_dropped;
        if (r.status.empty()) {
            t["status"] = "ok";
            t["S"] = r.result.s;
            t["tau"] = r.result.tau;
            t["variance"] = r.result.variance;
            t["z"] = r.result.z;
            t["p"] = r.result.p;
            t["direction"] = to_string(r.result.direction);
            t["n_effective_ratio"] = r.result.n_effective_ratio;
        } else {
            t["status"] = r.status;
        }
        j["trends"].push_back(std::move(t));
    }
    return j.dump(2) + "\n";
}

} // namespace rqa
