#include "spillover/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "spillover/errors.hpp"

namespace spillover {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // trim spaces and stray carriage returns
        auto first = field.find_first_not_of(" \t\r");
        auto last = field.find_last_not_of(" \t\r");
        fields.push_back(first == std::string::npos ? std::string()
                                                    : field.substr(first, last - first + 1));
    }
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

bool parse_double(const std::string& text, double& value) {
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    return ec == std::errc() && ptr == text.data() + text.size();
}

double require_double(const std::string& text, std::size_t line) {
    double value = 0.0;
    if (!parse_double(text, value) || !std::isfinite(value)) {
        throw ParseError("malformed number: '" + text + "'", line);
    }
    return value;
}

const SpilloverSet* set_at(const KindSeries* ks, std::size_t w) {
    if (!ks) return nullptr;
    return ks->sets[w] ? &*ks->sets[w] : nullptr;
}

}  // namespace

std::string format_number(double value) {
    if (std::isnan(value)) return {};
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

void write_panel_csv(std::ostream& out, const MeasurePanel& panel) {
    out << "date";
    for (const std::string& asset : panel.assets()) {
        out << ',' << asset << "_rv," << asset << "_rsm," << asset << "_rsp";
    }
    out << '\n';
    const auto& rv = panel.values(MeasureKind::rv);
    const auto& rsm = panel.values(MeasureKind::rs_minus);
    const auto& rsp = panel.values(MeasureKind::rs_plus);
    for (int t = 0; t < panel.n_dates(); ++t) {
        out << panel.dates()[static_cast<std::size_t>(t)].to_string();
        for (int a = 0; a < panel.n_assets(); ++a) {
            out << ',' << format_number(rv(t, a)) << ',' << format_number(rsm(t, a)) << ','
                << format_number(rsp(t, a));
        }
        out << '\n';
    }
}

MeasurePanel read_panel_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("panel file is empty", 1);
    }
    std::vector<std::string> header = split_csv_line(line);
    if (header.size() < 7 || header[0] != "date" || (header.size() - 1) % 3 != 0) {
        throw ParseError("panel header must be date plus rv/rsm/rsp triplets for >= 2 assets",
                         1);
    }
    std::vector<std::string> assets;
    for (std::size_t c = 1; c < header.size(); c += 3) {
        auto expect_suffix = [&](std::size_t idx, const std::string& suffix) {
            const std::string& name = header[idx];
            if (name.size() <= suffix.size() ||
                name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0) {
                throw ParseError("panel header column '" + name + "' should end in " + suffix,
                                 1);
            }
            return name.substr(0, name.size() - suffix.size());
        };
        std::string asset = expect_suffix(c, "_rv");
        if (expect_suffix(c + 1, "_rsm") != asset || expect_suffix(c + 2, "_rsp") != asset) {
            throw ParseError("panel header triplet for asset '" + asset + "' is inconsistent",
                             1);
        }
        assets.push_back(asset);
    }

    std::vector<Date> dates;
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw ParseError("expected " + std::to_string(header.size()) + " fields, found " +
                                 std::to_string(fields.size()),
                             line_no);
        }
        try {
            dates.push_back(Date::parse(fields[0]));
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), line_no);
        }
        std::vector<double> row;
        row.reserve(fields.size() - 1);
        for (std::size_t c = 1; c < fields.size(); ++c) {
            row.push_back(require_double(fields[c], line_no));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("panel file has no data rows", line_no);

    const auto T = static_cast<Eigen::Index>(rows.size());
    const auto N = static_cast<Eigen::Index>(assets.size());
    Eigen::MatrixXd rv(T, N), rsm(T, N), rsp(T, N);
    for (Eigen::Index t = 0; t < T; ++t) {
        for (Eigen::Index a = 0; a < N; ++a) {
            rv(t, a) = rows[static_cast<std::size_t>(t)][static_cast<std::size_t>(3 * a)];
            rsm(t, a) = rows[static_cast<std::size_t>(t)][static_cast<std::size_t>(3 * a + 1)];
            rsp(t, a) = rows[static_cast<std::size_t>(t)][static_cast<std::size_t>(3 * a + 2)];
        }
    }
    return MeasurePanel(std::move(assets), std::move(dates), std::move(rv), std::move(rsm),
                        std::move(rsp));
}

void write_ingest_report_csv(std::ostream& out, const std::vector<IngestDayRecord>& records) {
    out << "asset,date,ticks,grid_points,returns,status,reason\n";
    for (const IngestDayRecord& r : records) {
        out << r.asset << ',' << r.date.to_string() << ',' << r.ticks << ',' << r.grid_points
            << ',' << r.n_returns << ',' << (r.kept ? "kept" : "dropped") << ',' << r.reason
            << '\n';
    }
}

void write_total_csv(std::ostream& out, const SpilloverSeries& series) {
    out << "date,total_rv,total_rsp,total_rsm,sam\n";
    const KindSeries* rv = series.find(MeasureKind::rv);
    const KindSeries* rsp = series.find(MeasureKind::rs_plus);
    const KindSeries* rsm = series.find(MeasureKind::rs_minus);
    for (std::size_t w = 0; w < series.dates.size(); ++w) {
        out << series.dates[w].to_string();
        for (const KindSeries* ks : {rv, rsp, rsm}) {
            const SpilloverSet* set = set_at(ks, w);
            out << ',' << (set ? format_number(set->total) : std::string());
        }
        out << ',' << (series.sam[w] ? format_number(series.sam[w]->sam) : std::string());
        out << '\n';
    }
}

void write_directional_csv(std::ostream& out, const SpilloverSeries& series) {
    out << "date,asset,from,to,net,sam_from,sam_to,measure_kind\n";
    for (std::size_t w = 0; w < series.dates.size(); ++w) {
        const std::string date = series.dates[w].to_string();
        for (const KindSeries& ks : series.kinds) {
            const SpilloverSet* set = set_at(&ks, w);
            for (std::size_t a = 0; a < series.assets.size(); ++a) {
                const auto i = static_cast<Eigen::Index>(a);
                out << date << ',' << series.assets[a] << ',';
                if (set) {
                    out << format_number(set->from_others(i)) << ','
                        << format_number(set->to_others(i)) << ',' << format_number(set->net(i));
                } else {
                    out << ",,";
                }
                if (series.sam[w]) {
                    out << ',' << format_number(series.sam[w]->sam_from(i)) << ','
                        << format_number(series.sam[w]->sam_to(i));
                } else {
                    out << ",,";
                }
                out << ',' << measure_kind_token(ks.kind) << '\n';
            }
        }
    }
}

void write_pairwise_csv(std::ostream& out, const SpilloverSeries& series) {
    out << "date,i,j,net_pairwise,measure_kind\n";
    for (std::size_t w = 0; w < series.dates.size(); ++w) {
        const std::string date = series.dates[w].to_string();
        for (const KindSeries& ks : series.kinds) {
            const SpilloverSet* set = set_at(&ks, w);
            for (std::size_t i = 0; i < series.assets.size(); ++i) {
                for (std::size_t j = i + 1; j < series.assets.size(); ++j) {
                    out << date << ',' << series.assets[i] << ',' << series.assets[j] << ',';
                    if (set) {
                        out << format_number(set->pairwise(static_cast<Eigen::Index>(i),
                                                           static_cast<Eigen::Index>(j)));
                    }
                    out << ',' << measure_kind_token(ks.kind) << '\n';
                }
            }
        }
    }
}

void write_diagnostics_csv(std::ostream& out, const SpilloverSeries& series) {
    out << "date,measure_kind,lag,spectral_radius,stable,design_condition,row_sum_err,status,"
           "reason\n";
    for (std::size_t w = 0; w < series.dates.size(); ++w) {
        for (const KindSeries& ks : series.kinds) {
            const WindowDiagnostics& diag = ks.diagnostics[w];
            out << series.dates[w].to_string() << ',' << measure_kind_token(ks.kind) << ','
                << (diag.lag > 0 ? std::to_string(diag.lag) : std::string()) << ','
                << format_number(diag.spectral_radius) << ',';
            if (!std::isnan(diag.spectral_radius)) {
                out << (diag.stable() ? '1' : '0');
            }
            out << ',' << format_number(diag.design_condition) << ','
                << format_number(diag.row_sum_err) << ',' << (diag.ok() ? "ok" : "failed") << ','
                << diag.error << '\n';
        }
    }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
    out << "range,series,mean,sd,n\n";
    for (const SummaryRow& row : rows) {
        out << row.range << ',' << row.series << ',' << format_number(row.mean) << ','
            << format_number(row.sd) << ',' << row.n << '\n';
    }
}

void render_fevd_table(std::ostream& out, const std::vector<std::string>& assets,
                       const Eigen::MatrixXd& normalized) {
    const Eigen::Index N = normalized.rows();
    if (static_cast<Eigen::Index>(assets.size()) != N) {
        throw std::invalid_argument("render_fevd_table: asset names do not match matrix size");
    }
    SpilloverSet set = make_spillover_set(normalized, ReportingConvention::table);

    std::size_t label_width = 5;  // fits "TO"/"TOTAL"
    for (const std::string& a : assets) label_width = std::max(label_width, a.size());
    const int cell = 12;

    auto pad_label = [&](const std::string& s) {
        out << s << std::string(label_width > s.size() ? label_width - s.size() : 0, ' ');
    };
    pad_label("");
    for (const std::string& a : assets) out << std::setw(cell) << a;
    out << std::setw(cell) << "FROM" << '\n';
    for (Eigen::Index i = 0; i < N; ++i) {
        pad_label(assets[static_cast<std::size_t>(i)]);
        for (Eigen::Index j = 0; j < N; ++j) {
            out << std::setw(cell) << format_number(100.0 * normalized(i, j));
        }
        out << std::setw(cell) << format_number(set.from_others(i)) << '\n';
    }
    pad_label("TO");
    for (Eigen::Index j = 0; j < N; ++j) {
        out << std::setw(cell) << format_number(set.to_others(j));
    }
    out << std::setw(cell) << "TOTAL" << '\n';
    pad_label("");
    for (Eigen::Index j = 0; j < N; ++j) out << std::setw(cell) << "";
    out << std::setw(cell) << format_number(set.total) << '\n';
}

Eigen::MatrixXd read_matrix_csv(std::istream& in, std::vector<std::string>* names) {
    std::vector<std::vector<double>> rows;
    std::vector<std::string> header_names;
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields = split_csv_line(line);
        std::vector<double> row;
        bool numeric_row = true;
        for (std::size_t c = 0; c < fields.size(); ++c) {
            double value = 0.0;
            if (parse_double(fields[c], value)) {
                row.push_back(value);
            } else if (c == 0 && !fields[c].empty()) {
                continue;  // leading label cell
            } else if (fields[c].empty() && c == 0) {
                continue;
            } else {
                numeric_row = false;
                break;
            }
        }
        if (!numeric_row) {
            if (saw_header || !rows.empty()) {
                throw ParseError("unexpected non-numeric row", line_no);
            }
            saw_header = true;
            for (std::size_t c = 0; c < fields.size(); ++c) {
                if (!fields[c].empty()) header_names.push_back(fields[c]);
            }
            continue;
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("matrix file has no rows", line_no);
    const auto N = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd m(N, N);
    for (Eigen::Index i = 0; i < N; ++i) {
        if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != N) {
            throw ParseError("matrix is not square", 0);
        }
        for (Eigen::Index j = 0; j < N; ++j) {
            m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    }
    if (names) {
        *names = header_names.size() == static_cast<std::size_t>(N)
                     ? header_names
                     : std::vector<std::string>();
    }
    return m;
}

}  // namespace spillover
