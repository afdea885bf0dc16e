#pragma once

#include <istream>
#include <set>

#include "spillover/datetime.hpp"
#include "spillover/ticks.hpp"

namespace spillover {

// Trading-session filter: a fixed-offset local clock, a daily session
// window, and day-level exclusions.
//
// Exclusions come from three rules:
//   * weekend_rule drops Saturdays and Sundays,
//   * year_end_rule drops Dec 24-26 and Dec 31-Jan 2 of every year,
//   * excluded_dates lists specific dates (holiday file).
struct SessionCalendar {
    TimeOfDay session_start{9 * 3600LL * kNsPerSecond};
    TimeOfDay session_end{(14 * 3600LL + 30 * 60) * kNsPerSecond};
    std::int32_t utc_offset_minutes = -300;  // EST
    std::set<Date> excluded_dates;
    bool weekend_rule = true;
    bool year_end_rule = true;

    bool is_excluded_date(Date d) const;
    bool in_session(TimeOfDay t) const {
        return session_start <= t && t <= session_end;
    }
    std::int64_t session_length_ns() const { return session_end.ns - session_start.ns; }

    void validate() const;  // session_start < session_end
};

// Loads a date-list file: one ISO date per line, '#' starts a comment,
// blank lines ignored.
std::set<Date> load_date_list(std::istream& in);

// Keeps only ticks whose local date is not excluded and whose local
// time-of-day lies within [session_start, session_end]. Idempotent.
TickSeries filter_calendar(const TickSeries& ticks, const SessionCalendar& cal);

}  // namespace spillover
