#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "spillover/measures.hpp"
#include "spillover/rolling.hpp"

namespace spillover {

// Fixed numeric formatting for all text output: 6 significant decimals
// (round-half-even via correctly rounded binary-to-decimal conversion).
// NaN renders as an empty field, the missing-value convention.
std::string format_number(double value);

// panel.csv: date, <asset>_rv, <asset>_rsm, <asset>_rsp per asset.
void write_panel_csv(std::ostream& out, const MeasurePanel& panel);
MeasurePanel read_panel_csv(std::istream& in);

struct IngestDayRecord {
    std::string asset;
    Date date;
    std::size_t ticks = 0;
    int grid_points = 0;
    int n_returns = 0;
    bool kept = false;
    std::string reason;  // empty when kept
};

// ingest_report.csv: one row per (asset, day) seen in the input.
void write_ingest_report_csv(std::ostream& out, const std::vector<IngestDayRecord>& records);

// total.csv: date, total_rv, total_rsp, total_rsm, sam.
void write_total_csv(std::ostream& out, const SpilloverSeries& series);

// directional.csv: date, asset, from, to, net, sam_from, sam_to, measure_kind.
void write_directional_csv(std::ostream& out, const SpilloverSeries& series);

// pairwise.csv: date, i, j, net_pairwise, measure_kind (pairs with i < j;
// the reverse direction is the negation).
void write_pairwise_csv(std::ostream& out, const SpilloverSeries& series);

// diagnostics.csv: one row per window and measure kind.
void write_diagnostics_csv(std::ostream& out, const SpilloverSeries& series);

// summary.csv rows from summarize().
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

// Prints the row-normalized decomposition x100 with the FROM column,
// TO row, and TOTAL cell (rows are receivers, columns are transmitters).
void render_fevd_table(std::ostream& out, const std::vector<std::string>& assets,
                       const Eigen::MatrixXd& normalized);

// Reads an N x N matrix of percent entries (optionally with a header row
// and leading label column, as produced by spreadsheet exports of
// spillover tables).
Eigen::MatrixXd read_matrix_csv(std::istream& in, std::vector<std::string>* names = nullptr);

}  // namespace spillover
