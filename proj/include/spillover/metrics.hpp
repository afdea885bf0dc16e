#pragma once

#include <Eigen/Dense>

namespace spillover {

// Reporting convention for directional spillovers. `table` reports
// plain off-diagonal row/column sums x100, the layout of published
// spillover tables; `eq_n` carries the 1/N factor of the index
// definitions. Directional values differ by exactly a factor of N
// between the two. The total index and the net pairwise index carry
// the 1/N factor under both conventions.
enum class ReportingConvention { table, eq_n };

const char* reporting_convention_name(ReportingConvention c);

// Spillover index family for one window, in percent.
struct SpilloverSet {
    double total = 0.0;
    Eigen::VectorXd from_others;  // received by i
    Eigen::VectorXd to_others;    // transmitted by i
    Eigen::VectorXd net;          // to_others - from_others
    Eigen::MatrixXd pairwise;     // pairwise(i,j) = net_pairwise(i,j); antisymmetric
    ReportingConvention convention = ReportingConvention::table;
};

// 100 * (1/N) * sum of off-diagonal entries of the row-normalized
// decomposition. Convention-independent.
double total_spillover(const Eigen::MatrixXd& normalized);

double directional_received(const Eigen::MatrixXd& normalized, int i,
                            ReportingConvention convention = ReportingConvention::table);
double directional_transmitted(const Eigen::MatrixXd& normalized, int i,
                               ReportingConvention convention = ReportingConvention::table);
double net_spillover(const Eigen::MatrixXd& normalized, int i,
                     ReportingConvention convention = ReportingConvention::table);

// 100 * (1/N) * (w_ji - w_ij): gross shocks transmitted from i to j
// minus those transmitted from j to i. Errors when i == j.
double net_pairwise(const Eigen::MatrixXd& normalized, int i, int j);

// All of the above in one pass over the matrix.
SpilloverSet make_spillover_set(const Eigen::MatrixXd& normalized,
                                ReportingConvention convention = ReportingConvention::table);

// Relative difference between spillovers computed from positive and
// negative semivariances: 100 * (s_plus - s_minus) / (0.5*(s_plus + s_minus)),
// bounded in [-200, 200]. Returns NaN (missing) when both inputs are
// zero; zero means perfect symmetry and is a distinct outcome.
double sam(double s_plus, double s_minus);

// Asymmetry measures for one window: overall plus the per-asset
// directional decompositions.
struct SamPoint {
    double sam = 0.0;
    Eigen::VectorXd sam_from;  // received by i
    Eigen::VectorXd sam_to;    // transmitted by i
};

// Pairs the index sets of the positive- and negative-semivariance runs.
SamPoint make_sam_point(const SpilloverSet& plus, const SpilloverSet& minus);

}  // namespace spillover
