#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "spillover/gfevd.hpp"
#include "spillover/measures.hpp"
#include "spillover/metrics.hpp"

namespace spillover {

struct RollingConfig {
    int window_length = 200;  // window covers rows t-199..t, labeled by t
    int horizon = 10;
    int lag = 2;
    std::vector<MeasureKind> kinds = {MeasureKind::rv, MeasureKind::rs_minus,
                                      MeasureKind::rs_plus};
    SigmaConvention sigma_convention = SigmaConvention::variance;
    ReportingConvention reporting = ReportingConvention::table;
    bool compute_stability = true;
    bool log_transform = false;  // fit on log measures; off by default (levels)
    int aic_max_lag = 0;         // > 0 selects the lag per window by AIC
    int workers = 1;

    void validate(int n_assets) const;
};

// Per-window fit diagnostics. `error` is empty on success, otherwise a
// short reason code (singular_design, degenerate_variance,
// nonpositive_log_input).
struct WindowDiagnostics {
    double spectral_radius = std::numeric_limits<double>::quiet_NaN();
    double design_condition = std::numeric_limits<double>::quiet_NaN();
    double row_sum_err = std::numeric_limits<double>::quiet_NaN();
    int lag = 0;
    std::string error;

    bool ok() const { return error.empty(); }
    bool stable() const { return spectral_radius < 1.0; }
};

struct KindSeries {
    MeasureKind kind = MeasureKind::rv;
    std::vector<std::optional<SpilloverSet>> sets;  // one per window, missing on error
    std::vector<WindowDiagnostics> diagnostics;
};

// Aligned index/SAM time series over all rolling windows. A failed
// window keeps its date slot with a flagged missing entry.
struct SpilloverSeries {
    std::vector<std::string> assets;
    std::vector<Date> dates;  // window end dates
    std::vector<KindSeries> kinds;
    std::vector<std::optional<SamPoint>> sam;  // needs both semivariance kinds
    ReportingConvention convention = ReportingConvention::table;
    int horizon = 0;
    int window_length = 0;

    const KindSeries* find(MeasureKind kind) const;
};

// Sweeps the fixed-length window over the panel and runs
// fit -> MA -> FEVD -> indices per measure kind. Deterministic given
// (panel, config); the worker count never changes the result.
SpilloverSeries run_rolling(const MeasurePanel& panel, const RollingConfig& config);

struct DateRange {
    std::string label;
    Date first;
    Date last;  // inclusive
};

struct SummaryRow {
    std::string range;
    std::string series;
    double mean = 0.0;
    double sd = 0.0;
    int n = 0;  // non-missing observations
};

// Mean and sample standard deviation of every index over the given date
// ranges. Missing entries are skipped. A range containing no series
// dates is an error.
std::vector<SummaryRow> summarize(const SpilloverSeries& series,
                                  const std::vector<DateRange>& ranges);

// Splits [first..last] at the given breakpoints; each breakpoint starts
// a new range. Breakpoints outside the span are ignored.
std::vector<DateRange> ranges_from_breaks(Date first, Date last, const std::vector<Date>& breaks);

}  // namespace spillover
