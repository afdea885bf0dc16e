#pragma once

#include <string>
#include <vector>

#include "spillover/calendar.hpp"
#include "spillover/io.hpp"
#include "spillover/measures.hpp"
#include "spillover/sampling.hpp"

namespace spillover {

// One asset's raw input, possibly split across several files
// concatenated by date (contract splices).
struct AssetInput {
    std::string id;
    std::vector<std::string> files;
};

struct IngestOptions {
    SessionCalendar calendar;
    SamplingOptions sampling;
    bool skip_header = false;
};

struct IngestResult {
    MeasurePanel panel;
    std::vector<IngestDayRecord> report;  // per (asset, day), pre-intersection
};

// parse -> calendar filter -> last-tick sampling -> log returns ->
// realized measures -> aligned panel, with a per-day report of kept and
// dropped days and their tick counts.
IngestResult run_ingestion(const std::vector<AssetInput>& inputs, const IngestOptions& options);

}  // namespace spillover
