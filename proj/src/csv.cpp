#include "rqa/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

#include "rqa/error.hpp"

namespace rqa {

namespace {

std::string location(const std::string& path, std::size_t line) {
    return path + ":" + std::to_string(line);
}

// Trims an optional trailing \r so CRLF files parse the same as LF files.
std::string_view chomp(std::string_view s) {
    if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
    return s;
}

} // namespace

void RawSeries::validate() const {
    if (dates.size() != prices.size())
        throw Error(Errc::InvalidInput, "dates and prices length mismatch for " + label);
    for (std::size_t i = 0; i < prices.size(); ++i) {
        if (!std::isfinite(prices[i]) || prices[i] <= 0.0)
            throw Error(Errc::InvalidInput, "non-positive or non-finite price in " + label);
        if (i > 0 && dates[i] <= dates[i - 1])
            throw Error(Errc::InvalidInput, "dates not strictly increasing in " + label);
    }
}

RawSeries read_price_csv(const std::string& path, std::string label) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IoError, "cannot open " + path);

    RawSeries raw;
    raw.label = std::move(label);

    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line))
        throw Error(Errc::ParseError, location(path, 1) + ": missing header row");
    ++lineno;

    while (std::getline(in, line)) {
        ++lineno;
        std::string_view row = chomp(line);
        if (row.empty()) continue;
        auto comma = row.find(',');
        if (comma == std::string_view::npos)
            throw Error(Errc::ParseError, location(path, lineno) + ": expected date,close");
        auto date = parse_iso_date(row.substr(0, comma));
        if (!date)
            throw Error(Errc::ParseError,
                        location(path, lineno) + ": unparseable date '" +
                            std::string(row.substr(0, comma)) + "'");
        std::string_view price_text = row.substr(comma + 1);
        double price = 0.0;
        auto [end, ec] = std::from_chars(price_text.data(), price_text.data() + price_text.size(), price);
        if (ec != std::errc{} || end != price_text.data() + price_text.size())
            throw Error(Errc::ParseError, location(path, lineno) + ": unparseable price '" +
                                              std::string(price_text) + "'");
        if (!std::isfinite(price) || price <= 0.0)
            throw Error(Errc::ParseError, location(path, lineno) + ": non-positive price");
        if (!raw.dates.empty() && *date <= raw.dates.back())
            throw Error(Errc::ParseError, location(path, lineno) + ": dates not strictly increasing");
        raw.dates.push_back(*date);
        raw.prices.push_back(price);
    }
    return raw;
}

} // namespace rqa
