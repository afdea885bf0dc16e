#include "spillover/calendar.hpp"

#include <stdexcept>
#include <string>

#include "spillover/errors.hpp"

namespace spillover {

bool SessionCalendar::is_excluded_date(Date d) const {
    if (weekend_rule && d.is_weekend()) return true;
    if (year_end_rule) {
        unsigned m = d.month();
        unsigned day = d.day();
        if (m == 12 && (day >= 24 && day <= 26)) return true;
        if (m == 12 && day == 31) return true;
        if (m == 1 && (day == 1 || day == 2)) return true;
    }
    return excluded_dates.count(d) > 0;
}

void SessionCalendar::validate() const {
    if (!(session_start < session_end)) {
        throw std::invalid_argument("session_start must precede session_end");
    }
}

std::set<Date> load_date_list(std::istream& in) {
    std::set<Date> dates;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        // trim
        auto first = raw.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = raw.find_last_not_of(" \t\r");
        std::string token = raw.substr(first, last - first + 1);
        try {
            dates.insert(Date::parse(token));
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), line_no);
        }
    }
    return dates;
}

TickSeries filter_calendar(const TickSeries& ticks, const SessionCalendar& cal) {
    cal.validate();
    TickSeries out;
    out.asset_id = ticks.asset_id;
    out.ticks.reserve(ticks.ticks.size());
    for (const Tick& tick : ticks.ticks) {
        LocalStamp local = to_local(tick.time, cal.utc_offset_minutes);
        if (cal.is_excluded_date(local.date)) continue;
        if (!cal.in_session(local.time)) continue;
        out.ticks.push_back(tick);
    }
    return out;
}

}  // namespace spillover
