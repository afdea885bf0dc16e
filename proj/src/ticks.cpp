#include "spillover/ticks.hpp"

#include <charconv>
#include <cmath>
#include <utility>

#include "spillover/errors.hpp"

namespace spillover {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_price(std::string_view text, std::size_t line) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw ParseError("malformed price: '" + std::string(text) + "'", line);
    }
    if (value <= 0.0) {
        throw ParseError("non-positive price: '" + std::string(text) + "'", line);
    }
    return value;
}

}  // namespace

TickSeries parse_ticks(std::istream& source, const std::string& asset_id,
                       const TickParseOptions& options) {
    TickSeries series;
    series.asset_id = asset_id;

    std::string raw;
    std::size_t line_no = 0;
    bool header_pending = options.skip_header;
    while (std::getline(source, raw)) {
        ++line_no;
        std::string_view line = trim(raw);
        if (line.empty()) continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string_view::npos) {
            throw ParseError("expected 'timestamp,price'", line_no);
        }
        std::string_view ts_text = trim(line.substr(0, comma));
        std::string_view price_text = trim(line.substr(comma + 1));
        if (price_text.find(',') != std::string_view::npos) {
            throw ParseError("expected exactly two fields", line_no);
        }
        Instant ts;
        try {
            ts = parse_instant(ts_text);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), line_no);
        }
        double price = parse_price(price_text, line_no);
        if (!series.ticks.empty() && ts < series.ticks.back().time) {
            throw ParseError("timestamps decreasing", line_no);
        }
        series.ticks.push_back(Tick{ts, price});
    }
    return series;
}

TickSeries concat_ticks(std::vector<TickSeries> parts) {
    TickSeries out;
    for (auto& part : parts) {
        if (out.asset_id.empty()) {
            out.asset_id = part.asset_id;
        } else if (!part.asset_id.empty() && part.asset_id != out.asset_id) {
            throw Error("cannot concatenate ticks of different assets: '" + out.asset_id +
                        "' vs '" + part.asset_id + "'");
        }
        if (!out.ticks.empty() && !part.ticks.empty() &&
            part.ticks.front().time < out.ticks.back().time) {
            throw Error("tick files for asset '" + out.asset_id +
                        "' overlap out of order at the file boundary");
        }
        out.ticks.insert(out.ticks.end(), part.ticks.begin(), part.ticks.end());
    }
    return out;
}

}  // namespace spillover
