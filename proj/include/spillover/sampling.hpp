#pragma once

#include <string>
#include <vector>

#include "spillover/calendar.hpp"
#include "spillover/datetime.hpp"
#include "spillover/ticks.hpp"

namespace spillover {

// Prices sampled onto the intraday grid for one day. `first_slot` is the
// index of the first grid instant with a preceding trade; earlier slots
// are dropped rather than back-filled.
struct GridDay {
    Date date;
    int first_slot = 0;
    std::vector<double> prices;
    std::size_t tick_count = 0;
};

enum class DropReason {
    too_few_ticks,        // below the per-day minimum-observation threshold
    too_few_grid_points,  // fewer than 2 sampled prices, no return can be formed
};

struct DroppedDay {
    Date date;
    std::size_t tick_count = 0;
    DropReason reason = DropReason::too_few_ticks;
};

const char* drop_reason_name(DropReason r);

struct SampledSeries {
    std::string asset_id;
    std::vector<GridDay> days;
    std::vector<DroppedDay> dropped;
};

struct SamplingOptions {
    std::int64_t interval_ns = 5 * 60 * kNsPerSecond;
    std::size_t min_ticks_per_day = 10;
};

// Last-tick sampling: each grid instant session_start + k*interval
// (k = 0..session_length/interval) takes the most recent trade at or
// before it within the same day. `ticks` must already be
// calendar-filtered; the interval must divide the session length.
// Days with fewer than min_ticks_per_day trades are dropped and reported.
SampledSeries sample_last_tick(const TickSeries& ticks, const SessionCalendar& cal,
                               const SamplingOptions& options = {});

struct ReturnDay {
    Date date;
    std::vector<double> returns;
};

// Per-day equally spaced intraday log-returns. Days never share returns:
// the first return of a day is intra-session, no overnight spans.
struct ReturnGrid {
    std::string asset_id;
    std::vector<ReturnDay> days;
    std::vector<DroppedDay> dropped;  // carried over from sampling, plus <2-point days
};

// r_i = ln(p_i) - ln(p_{i-1}) over consecutive grid prices within each
// day. Days with fewer than two grid points are dropped and reported.
ReturnGrid log_returns(const SampledSeries& grids);

}  // namespace spillover
