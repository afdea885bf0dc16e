#include "spillover/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spillover {
namespace {

void check_index(const Eigen::MatrixXd& normalized, int i) {
    if (normalized.rows() != normalized.cols()) {
        throw std::invalid_argument("spillover metrics need a square matrix");
    }
    if (i < 0 || i >= normalized.rows()) {
        throw std::invalid_argument("asset index out of range");
    }
}

double off_diagonal_row_sum(const Eigen::MatrixXd& m, int i) {
    return m.row(i).sum() - m(i, i);
}

double off_diagonal_col_sum(const Eigen::MatrixXd& m, int i) {
    return m.col(i).sum() - m(i, i);
}

double directional_factor(const Eigen::MatrixXd& m, ReportingConvention convention) {
    return convention == ReportingConvention::eq_n
               ? 100.0 / static_cast<double>(m.rows())
               : 100.0;
}

}  // namespace

const char* reporting_convention_name(ReportingConvention c) {
    return c == ReportingConvention::table ? "table" : "eqN";
}

double total_spillover(const Eigen::MatrixXd& normalized) {
    check_index(normalized, 0);
    double off_diag = normalized.sum() - normalized.diagonal().sum();
    return 100.0 * off_diag / static_cast<double>(normalized.rows());
}

double directional_received(const Eigen::MatrixXd& normalized, int i,
                            ReportingConvention convention) {
    check_index(normalized, i);
    return directional_factor(normalized, convention) * off_diagonal_row_sum(normalized, i);
}

double directional_transmitted(const Eigen::MatrixXd& normalized, int i,
                               ReportingConvention convention) {
    check_index(normalized, i);
    return directional_factor(normalized, convention) * off_diagonal_col_sum(normalized, i);
}

double net_spillover(const Eigen::MatrixXd& normalized, int i, ReportingConvention convention) {
    return directional_transmitted(normalized, i, convention) -
           directional_received(normalized, i, convention);
}

double net_pairwise(const Eigen::MatrixXd& normalized, int i, int j) {
    check_index(normalized, i);
    check_index(normalized, j);
    if (i == j) throw std::invalid_argument("net_pairwise: i and j must differ");
    return 100.0 * (normalized(j, i) - normalized(i, j)) /
           static_cast<double>(normalized.rows());
}

SpilloverSet make_spillover_set(const Eigen::MatrixXd& normalized,
                                ReportingConvention convention) {
    check_index(normalized, 0);
    const Eigen::Index N = normalized.rows();
    SpilloverSet set;
    set.convention = convention;
    set.total = total_spillover(normalized);
    set.from_others.resize(N);
    set.to_others.resize(N);
    set.net.resize(N);
    const double factor = directional_factor(normalized, convention);
    for (Eigen::Index i = 0; i < N; ++i) {
        set.from_others(i) = factor * off_diagonal_row_sum(normalized, static_cast<int>(i));
        set.to_others(i) = factor * off_diagonal_col_sum(normalized, static_cast<int>(i));
        set.net(i) = set.to_others(i) - set.from_others(i);
    }
    set.pairwise = Eigen::MatrixXd::Zero(N, N);
    for (Eigen::Index i = 0; i < N; ++i) {
        for (Eigen::Index j = 0; j < N; ++j) {
            if (i == j) continue;
            set.pairwise(i, j) =
                100.0 * (normalized(j, i) - normalized(i, j)) / static_cast<double>(N);
        }
    }
    return set;
}

double sam(double s_plus, double s_minus) {
    if (s_plus < 0.0 || s_minus < 0.0) {
        throw std::invalid_argument("sam: spillover inputs must be non-negative");
    }
    const double mean = 0.5 * (s_plus + s_minus);
    if (!(mean > 0.0)) {
        return std::numeric_limits<double>::quiet_NaN();  // undefined, emitted as missing
    }
    return 100.0 * (s_plus - s_minus) / mean;
}

SamPoint make_sam_point(const SpilloverSet& plus, const SpilloverSet& minus) {
    if (plus.from_others.size() != minus.from_others.size()) {
        throw std::invalid_argument("make_sam_point: mismatched asset counts");
    }
    if (plus.convention != minus.convention) {
        throw std::invalid_argument("make_sam_point: mismatched reporting conventions");
    }
    const Eigen::Index N = plus.from_others.size();
    SamPoint point;
    point.sam = sam(plus.total, minus.total);
    point.sam_from.resize(N);
    point.sam_to.resize(N);
    for (Eigen::Index i = 0; i < N; ++i) {
        point.sam_from(i) = sam(plus.from_others(i), minus.from_others(i));
        point.sam_to(i) = sam(plus.to_others(i), minus.to_others(i));
    }
    return point;
}

}  // namespace spillover
