#pragma once

#include <istream>
#include <string>
#include <vector>

#include "spillover/datetime.hpp"

namespace spillover {

struct Tick {
    Instant time;
    double price = 0.0;
};

// Raw timestamped trade prices for one asset. Timestamps are
// non-decreasing and prices strictly positive; both are enforced at
// parse time.
struct TickSeries {
    std::string asset_id;
    std::vector<Tick> ticks;
};

struct TickParseOptions {
    bool skip_header = false;
};

// Reads rows of `timestamp,price` from a stream. Malformed rows (bad
// timestamp, non-numeric or non-positive price) raise ParseError with
// the 1-based line number; a timestamp earlier than its predecessor
// raises ParseError as well. Blank lines are ignored.
TickSeries parse_ticks(std::istream& source, const std::string& asset_id,
                       const TickParseOptions& options = {});

// Concatenates series for the same asset in the given order (used for
// contract splices split across files). The combined timestamps must
// still be non-decreasing.
TickSeries concat_ticks(std::vector<TickSeries> parts);

}  // namespace spillover
