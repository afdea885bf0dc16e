#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "spillover/datetime.hpp"
#include "spillover/sampling.hpp"

namespace spillover {

enum class MeasureKind { rv, rs_minus, rs_plus };

inline constexpr MeasureKind kAllMeasureKinds[] = {MeasureKind::rv, MeasureKind::rs_minus,
                                                   MeasureKind::rs_plus};

// Short tokens used in CSV headers and columns: rv, rsm, rsp.
const char* measure_kind_token(MeasureKind kind);
MeasureKind parse_measure_kind(const std::string& token);

// Sum of squared intraday log-returns. Errors on an empty vector.
double realized_variance(std::span<const double> returns);

struct Semivariances {
    double rs_minus = 0.0;
    double rs_plus = 0.0;
};

// Signed decomposition of the realized variance: squared returns from
// strictly negative / strictly positive returns. Zero returns count
// toward neither side, which keeps rv == rs_minus + rs_plus exact.
Semivariances realized_semivariances(std::span<const double> returns);

struct DailyMeasure {
    Date date;
    double rv = 0.0;
    double rs_minus = 0.0;
    double rs_plus = 0.0;
};

// Per-day realized measures for N assets on one aligned date axis.
// Rows are dates (strictly increasing), columns are assets; every cell
// is present.
class MeasurePanel {
public:
    MeasurePanel() = default;
    MeasurePanel(std::vector<std::string> assets, std::vector<Date> dates,
                 Eigen::MatrixXd rv, Eigen::MatrixXd rs_minus, Eigen::MatrixXd rs_plus);

    int n_assets() const { return static_cast<int>(assets_.size()); }
    int n_dates() const { return static_cast<int>(dates_.size()); }
    const std::vector<std::string>& assets() const { return assets_; }
    const std::vector<Date>& dates() const { return dates_; }
    const Eigen::MatrixXd& values(MeasureKind kind) const;
    DailyMeasure at(int row, int col) const;

private:
    std::vector<std::string> assets_;
    std::vector<Date> dates_;
    Eigen::MatrixXd rv_, rs_minus_, rs_plus_;
};

// Assembles the cross-asset panel over the intersection of dates present
// for every asset. Requires at least two assets and a non-empty
// intersection; asset order is preserved from the input.
MeasurePanel build_panel(const std::vector<ReturnGrid>& grids);

}  // namespace spillover
