#include "spillover/datetime.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace spillover {
namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

int to_int(std::string_view s) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    }
    return value;
}

[[noreturn]] void bad_timestamp(std::string_view text) {
    throw std::invalid_argument("malformed timestamp: '" + std::string(text) + "'");
}

}  // namespace

Date Date::from_ymd(int year, unsigned month, unsigned day) {
    std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                    std::chrono::day{day}};
    if (!ymd.ok()) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", year, month, day);
        throw std::invalid_argument(std::string("invalid calendar date: ") + buf);
    }
    return Date(static_cast<std::int32_t>(
        std::chrono::sys_days(ymd).time_since_epoch().count()));
}

Date Date::parse(std::string_view iso) {
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-' ||
        !all_digits(iso.substr(0, 4)) || !all_digits(iso.substr(5, 2)) ||
        !all_digits(iso.substr(8, 2))) {
        throw std::invalid_argument("malformed date (expected YYYY-MM-DD): '" +
                                    std::string(iso) + "'");
    }
    return from_ymd(to_int(iso.substr(0, 4)), static_cast<unsigned>(to_int(iso.substr(5, 2))),
                    static_cast<unsigned>(to_int(iso.substr(8, 2))));
}

std::chrono::year_month_day Date::ymd() const {
    return std::chrono::year_month_day(
        std::chrono::sys_days(std::chrono::days(days_)));
}

int Date::year() const { return static_cast<int>(ymd().year()); }
unsigned Date::month() const { return static_cast<unsigned>(ymd().month()); }
unsigned Date::day() const { return static_cast<unsigned>(ymd().day()); }

bool Date::is_weekend() const {
    std::chrono::weekday wd{std::chrono::sys_days(std::chrono::days(days_))};
    return wd == std::chrono::Saturday || wd == std::chrono::Sunday;
}

std::string Date::to_string() const {
    auto d = ymd();
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(d.year()),
                  static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return buf;
}

TimeOfDay TimeOfDay::parse(std::string_view text) {
    if (!(text.size() == 5 || text.size() == 8) || text[2] != ':' ||
        !all_digits(text.substr(0, 2)) || !all_digits(text.substr(3, 2))) {
        throw std::invalid_argument("malformed time (expected HH:MM[:SS]): '" +
                                    std::string(text) + "'");
    }
    int seconds = 0;
    if (text.size() == 8) {
        if (text[5] != ':' || !all_digits(text.substr(6, 2))) {
            throw std::invalid_argument("malformed time: '" + std::string(text) + "'");
        }
        seconds = to_int(text.substr(6, 2));
    }
    int hours = to_int(text.substr(0, 2));
    int minutes = to_int(text.substr(3, 2));
    if (hours > 23 || minutes > 59 || seconds > 59) {
        throw std::invalid_argument("time out of range: '" + std::string(text) + "'");
    }
    return TimeOfDay{(hours * 3600LL + minutes * 60LL + seconds) * kNsPerSecond};
}

std::string TimeOfDay::to_string() const {
    std::int64_t total_s = ns / kNsPerSecond;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%02lld:%02lld:%02lld",
                  static_cast<long long>(total_s / 3600),
                  static_cast<long long>((total_s / 60) % 60),
                  static_cast<long long>(total_s % 60));
    return buf;
}

Instant parse_instant(std::string_view iso) {
    // Date part.
    if (iso.size() < 11) bad_timestamp(iso);
    if (iso[10] != 'T' && iso[10] != 't') bad_timestamp(iso);
    Date date = Date::parse(iso.substr(0, 10));
    std::string_view rest = iso.substr(11);

    // Time part HH:MM:SS.
    if (rest.size() < 8 || rest[2] != ':' || rest[5] != ':' ||
        !all_digits(rest.substr(0, 2)) || !all_digits(rest.substr(3, 2)) ||
        !all_digits(rest.substr(6, 2))) {
        bad_timestamp(iso);
    }
    int hours = to_int(rest.substr(0, 2));
    int minutes = to_int(rest.substr(3, 2));
    int seconds = to_int(rest.substr(6, 2));
    if (hours > 23 || minutes > 59 || seconds > 60) bad_timestamp(iso);
    rest = rest.substr(8);

    // Optional fractional seconds.
    std::int64_t frac_ns = 0;
    if (!rest.empty() && rest[0] == '.') {
        rest = rest.substr(1);
        std::size_t n_digits = 0;
        while (n_digits < rest.size() && rest[n_digits] >= '0' && rest[n_digits] <= '9') {
            ++n_digits;
        }
        if (n_digits == 0 || n_digits > 9) bad_timestamp(iso);
        std::int64_t scale = kNsPerSecond;
        for (std::size_t i = 0; i < n_digits; ++i) {
            scale /= 10;
            frac_ns += (rest[i] - '0') * scale;
        }
        rest = rest.substr(n_digits);
    }

    // Mandatory offset.
    if (rest.empty()) {
        throw std::invalid_argument("timestamp missing UTC offset: '" + std::string(iso) + "'");
    }
    std::int64_t offset_minutes = 0;
    if (rest == "Z" || rest == "z") {
        offset_minutes = 0;
    } else {
        offset_minutes = parse_utc_offset_minutes(rest);
    }

    std::int64_t local_ns = static_cast<std::int64_t>(date.days()) * kNsPerDay +
                            (hours * 3600LL + minutes * 60LL + seconds) * kNsPerSecond +
                            frac_ns;
    return Instant{local_ns - offset_minutes * 60 * kNsPerSecond};
}

std::int32_t parse_utc_offset_minutes(std::string_view text) {
    if (text.size() < 3 || (text[0] != '+' && text[0] != '-')) {
        throw std::invalid_argument("malformed UTC offset: '" + std::string(text) + "'");
    }
    int sign = text[0] == '-' ? -1 : 1;
    std::string_view body = text.substr(1);
    int hours = 0;
    int minutes = 0;
    if (body.size() == 2 && all_digits(body)) {
        hours = to_int(body);
    } else if (body.size() == 4 && all_digits(body)) {
        hours = to_int(body.substr(0, 2));
        minutes = to_int(body.substr(2, 2));
    } else if (body.size() == 5 && body[2] == ':' && all_digits(body.substr(0, 2)) &&
               all_digits(body.substr(3, 2))) {
        hours = to_int(body.substr(0, 2));
        minutes = to_int(body.substr(3, 2));
    } else {
        throw std::invalid_argument("malformed UTC offset: '" + std::string(text) + "'");
    }
    if (hours > 18 || minutes > 59) {
        throw std::invalid_argument("UTC offset out of range: '" + std::string(text) + "'");
    }
    return sign * (hours * 60 + minutes);
}

LocalStamp to_local(Instant t, std::int32_t utc_offset_minutes) {
    std::int64_t local_ns = t.ns + static_cast<std::int64_t>(utc_offset_minutes) * 60 * kNsPerSecond;
    std::int64_t day = local_ns / kNsPerDay;
    if (local_ns < 0 && local_ns % kNsPerDay != 0) --day;  // floor toward -inf
    std::int64_t tod = local_ns - day * kNsPerDay;
    return LocalStamp{Date(static_cast<std::int32_t>(day)), TimeOfDay{tod}};
}

}  // namespace spillover
