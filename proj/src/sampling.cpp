#include "spillover/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace spillover {

const char* drop_reason_name(DropReason r) {
    switch (r) {
        case DropReason::too_few_ticks:
            return "too_few_ticks";
        case DropReason::too_few_grid_points:
            return "too_few_grid_points";
    }
    return "unknown";
}

SampledSeries sample_last_tick(const TickSeries& ticks, const SessionCalendar& cal,
                               const SamplingOptions& options) {
    cal.validate();
    if (options.interval_ns <= 0) {
        throw std::invalid_argument("sampling interval must be positive");
    }
    if (cal.session_length_ns() % options.interval_ns != 0) {
        throw std::invalid_argument("sampling interval must divide the session length");
    }
    const int n_slots = static_cast<int>(cal.session_length_ns() / options.interval_ns) + 1;

    SampledSeries out;
    out.asset_id = ticks.asset_id;

    std::size_t i = 0;
    const auto& all = ticks.ticks;
    while (i < all.size()) {
        // One day's span of ticks (input is time-ordered).
        LocalStamp first = to_local(all[i].time, cal.utc_offset_minutes);
        Date day = first.date;
        std::size_t begin = i;
        while (i < all.size() &&
               to_local(all[i].time, cal.utc_offset_minutes).date == day) {
            ++i;
        }
        std::size_t count = i - begin;
        if (count < options.min_ticks_per_day) {
            out.dropped.push_back(DroppedDay{day, count, DropReason::too_few_ticks});
            continue;
        }

        GridDay grid;
        grid.date = day;
        grid.tick_count = count;
        grid.first_slot = -1;
        std::size_t cursor = begin;
        double last_price = 0.0;
        bool have_price = false;
        for (int k = 0; k < n_slots; ++k) {
            std::int64_t slot_tod = cal.session_start.ns +
                                    static_cast<std::int64_t>(k) * options.interval_ns;
            while (cursor < i &&
                   to_local(all[cursor].time, cal.utc_offset_minutes).time.ns <= slot_tod) {
                last_price = all[cursor].price;
                have_price = true;
                ++cursor;
            }
            if (!have_price) continue;  // no trade yet: leading slot dropped
            if (grid.first_slot < 0) grid.first_slot = k;
            grid.prices.push_back(last_price);
        }
        if (grid.first_slot < 0) grid.first_slot = 0;
        out.days.push_back(std::move(grid));
    }
    return out;
}

ReturnGrid log_returns(const SampledSeries& grids) {
    ReturnGrid out;
    out.asset_id = grids.asset_id;
    out.dropped = grids.dropped;
    for (const GridDay& day : grids.days) {
        if (day.prices.size() < 2) {
            out.dropped.push_back(
                DroppedDay{day.date, day.tick_count, DropReason::too_few_grid_points});
            continue;
        }
        ReturnDay rd;
        rd.date = day.date;
        rd.returns.reserve(day.prices.size() - 1);
        for (std::size_t k = 1; k < day.prices.size(); ++k) {
            rd.returns.push_back(std::log(day.prices[k]) - std::log(day.prices[k - 1]));
        }
        out.days.push_back(std::move(rd));
    }
    return out;
}

}  // namespace spillover
