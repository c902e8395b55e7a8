#include "rqa/date.hpp"

#include <cstdio>

namespace rqa {

std::optional<Date> parse_iso_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    int y = 0, m = 0, d = 0;
    for (std::size_t i = 0; i < 10; ++i) {
        if (i == 4 || i == 7) continue;
        char c = text[i];
        if (c < '0' || c > '9') return std::nullopt;
        int digit = c - '0';
        if (i < 4)
            y = y * 10 + digit;
        else if (i < 7)
            m = m * 10 + digit;
        else
            d = d * 10 + digit;
    }
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                    std::chrono::day{unsigned(d)}};
    if (!ymd.ok()) return std::nullopt;
    return std::chrono::sys_days{ymd};
}

std::string format_iso_date(Date day) {
    std::chrono::year_month_day ymd{day};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()));
    return buf;
}

std::vector<Date> daily_calendar(Date first, Date last) {
    std::vector<Date> days;
    for (Date d = first; d <= last; d += std::chrono::days{1}) days.push_back(d);
    return days;
}

std::vector<Date> weekday_calendar(Date first, Date last) {
    std::vector<Date> days;
    for (Date d = first; d <= last; d += std::chrono::days{1}) {
        std::chrono::weekday wd{d};
        if (wd != std::chrono::Saturday && wd != std::chrono::Sunday) days.push_back(d);
    }
    return days;
}

} // namespace rqa
