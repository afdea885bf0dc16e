#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace spillover {

inline constexpr std::int64_t kNsPerSecond = 1'000'000'000;
inline constexpr std::int64_t kNsPerDay = 86'400 * kNsPerSecond;

// Calendar date, stored as days since 1970-01-01.
class Date {
public:
    Date() = default;
    constexpr explicit Date(std::int32_t days) : days_(days) {}

    static Date from_ymd(int year, unsigned month, unsigned day);

    // Parses "YYYY-MM-DD"; throws std::invalid_argument on malformed input.
    static Date parse(std::string_view iso);

    std::int32_t days() const { return days_; }
    std::chrono::year_month_day ymd() const;
    int year() const;
    unsigned month() const;
    unsigned day() const;
    bool is_weekend() const;
    std::string to_string() const;

    Date next() const { return Date(days_ + 1); }
    auto operator<=>(const Date&) const = default;

private:
    std::int32_t days_ = 0;
};

// Instant in time: nanoseconds since the Unix epoch, UTC.
struct Instant {
    std::int64_t ns = 0;
    auto operator<=>(const Instant&) const = default;
};

// Clock time within a day, nanoseconds since midnight.
struct TimeOfDay {
    std::int64_t ns = 0;

    // Parses "HH:MM" or "HH:MM:SS".
    static TimeOfDay parse(std::string_view text);
    std::string to_string() const;
    auto operator<=>(const TimeOfDay&) const = default;
};

// A UTC instant mapped onto a fixed-offset local clock.
struct LocalStamp {
    Date date;
    TimeOfDay time;
};

// Parses an ISO-8601 timestamp with an explicit offset, e.g.
// "2014-02-12T09:00:01-05:00", "2014-02-12T09:00:01.25Z".
// Accepted offsets: Z, +-HH:MM, +-HHMM, +-HH. Fractional seconds up to
// nanosecond resolution. Throws std::invalid_argument on malformed input.
Instant parse_instant(std::string_view iso);

// Parses "+HH:MM" / "-HH:MM" / "+HHMM" / "-HH" into minutes east of UTC.
std::int32_t parse_utc_offset_minutes(std::string_view text);

LocalStamp to_local(Instant t, std::int32_t utc_offset_minutes);

}  // namespace spillover
