#include "spillover/pipeline.hpp"

#include <algorithm>
#include <fstream>

#include "spillover/errors.hpp"

namespace spillover {

IngestResult run_ingestion(const std::vector<AssetInput>& inputs, const IngestOptions& options) {
    if (inputs.size() < 2) {
        throw std::invalid_argument("ingestion requires at least two assets");
    }
    options.calendar.validate();

    IngestResult result;
    std::vector<ReturnGrid> grids;
    grids.reserve(inputs.size());
    for (const AssetInput& input : inputs) {
        std::vector<TickSeries> parts;
        parts.reserve(input.files.size());
        for (const std::string& path : input.files) {
            std::ifstream file(path);
            if (!file) {
                throw Error("cannot open input file '" + path + "' for asset '" + input.id +
                            "'");
            }
            try {
                parts.push_back(parse_ticks(file, input.id,
                                            TickParseOptions{options.skip_header}));
            } catch (const ParseError& e) {
                throw ParseError(std::string(e.what()) + " in '" + path + "'", e.line());
            }
        }
        TickSeries ticks = concat_ticks(std::move(parts));
        TickSeries filtered = filter_calendar(ticks, options.calendar);
        SampledSeries sampled = sample_last_tick(filtered, options.calendar, options.sampling);
        ReturnGrid grid = log_returns(sampled);

        for (const GridDay& day : sampled.days) {
            // Days that survived sampling; the <2-grid-point ones reappear
            // below among grid.dropped.
            if (day.prices.size() < 2) continue;
            result.report.push_back(IngestDayRecord{
                input.id, day.date, day.tick_count, static_cast<int>(day.prices.size()),
                static_cast<int>(day.prices.size()) - 1, true, ""});
        }
        for (const DroppedDay& drop : grid.dropped) {
            result.report.push_back(IngestDayRecord{input.id, drop.date, drop.tick_count, 0, 0,
                                                    false, drop_reason_name(drop.reason)});
        }
        grids.push_back(std::move(grid));
    }

    std::sort(result.report.begin(), result.report.end(),
              [](const IngestDayRecord& a, const IngestDayRecord& b) {
                  if (a.asset != b.asset) return a.asset < b.asset;
                  return a.date < b.date;
              });
    result.panel = build_panel(grids);
    return result;
}

}  // namespace spillover
