#include "spillover/measures.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "spillover/errors.hpp"

namespace spillover {

const char* measure_kind_token(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::rv:
            return "rv";
        case MeasureKind::rs_minus:
            return "rsm";
        case MeasureKind::rs_plus:
            return "rsp";
    }
    return "?";
}

MeasureKind parse_measure_kind(const std::string& token) {
    if (token == "rv") return MeasureKind::rv;
    if (token == "rsm" || token == "rs_minus") return MeasureKind::rs_minus;
    if (token == "rsp" || token == "rs_plus") return MeasureKind::rs_plus;
    throw std::invalid_argument("unknown measure kind: '" + token + "' (expected rv, rsm, rsp)");
}

double realized_variance(std::span<const double> returns) {
    if (returns.empty()) {
        throw InsufficientDataError("realized_variance: no observations");
    }
    double sum = 0.0;
    for (double r : returns) sum += r * r;
    return sum;
}

Semivariances realized_semivariances(std::span<const double> returns) {
    if (returns.empty()) {
        throw InsufficientDataError("realized_semivariances: no observations");
    }
    Semivariances s;
    for (double r : returns) {
        if (r < 0.0) {
            s.rs_minus += r * r;
        } else if (r > 0.0) {
            s.rs_plus += r * r;
        }
    }
    return s;
}

MeasurePanel::MeasurePanel(std::vector<std::string> assets, std::vector<Date> dates,
                           Eigen::MatrixXd rv, Eigen::MatrixXd rs_minus,
                           Eigen::MatrixXd rs_plus)
    : assets_(std::move(assets)),
      dates_(std::move(dates)),
      rv_(std::move(rv)),
      rs_minus_(std::move(rs_minus)),
      rs_plus_(std::move(rs_plus)) {
    const auto T = static_cast<Eigen::Index>(dates_.size());
    const auto N = static_cast<Eigen::Index>(assets_.size());
    if (N < 2) {
        throw std::invalid_argument("MeasurePanel requires at least two assets");
    }
    if (rv_.rows() != T || rv_.cols() != N || rs_minus_.rows() != T || rs_minus_.cols() != N ||
        rs_plus_.rows() != T || rs_plus_.cols() != N) {
        throw std::invalid_argument("MeasurePanel dimensions are inconsistent");
    }
    for (std::size_t i = 1; i < dates_.size(); ++i) {
        if (!(dates_[i - 1] < dates_[i])) {
            throw std::invalid_argument("MeasurePanel dates must be strictly increasing");
        }
    }
}

const Eigen::MatrixXd& MeasurePanel::values(MeasureKind kind) const {
    switch (kind) {
        case MeasureKind::rv:
            return rv_;
        case MeasureKind::rs_minus:
            return rs_minus_;
        case MeasureKind::rs_plus:
            return rs_plus_;
    }
    throw std::logic_error("unreachable measure kind");
}

DailyMeasure MeasurePanel::at(int row, int col) const {
    return DailyMeasure{dates_.at(static_cast<std::size_t>(row)), rv_(row, col),
                        rs_minus_(row, col), rs_plus_(row, col)};
}

MeasurePanel build_panel(const std::vector<ReturnGrid>& grids) {
    if (grids.size() < 2) {
        throw std::invalid_argument("build_panel requires at least two assets");
    }

    // Per-asset date -> measures, then intersect the date axes.
    std::vector<std::map<Date, DailyMeasure>> per_asset(grids.size());
    for (std::size_t a = 0; a < grids.size(); ++a) {
        for (const ReturnDay& day : grids[a].days) {
            DailyMeasure m;
            m.date = day.date;
            m.rv = realized_variance(day.returns);
            Semivariances s = realized_semivariances(day.returns);
            m.rs_minus = s.rs_minus;
            m.rs_plus = s.rs_plus;
            per_asset[a][day.date] = m;
        }
    }

    std::vector<Date> common;
    for (const auto& [date, measure] : per_asset[0]) {
        bool everywhere = true;
        for (std::size_t a = 1; a < per_asset.size(); ++a) {
            if (per_asset[a].find(date) == per_asset[a].end()) {
                everywhere = false;
                break;
            }
        }
        if (everywhere) common.push_back(date);
    }
    if (common.empty()) {
        throw InsufficientDataError("build_panel: empty date intersection across assets");
    }

    const auto T = static_cast<Eigen::Index>(common.size());
    const auto N = static_cast<Eigen::Index>(grids.size());
    Eigen::MatrixXd rv(T, N), rsm(T, N), rsp(T, N);
    for (Eigen::Index t = 0; t < T; ++t) {
        for (Eigen::Index a = 0; a < N; ++a) {
            const DailyMeasure& m = per_asset[static_cast<std::size_t>(a)].at(common[t]);
            rv(t, a) = m.rv;
            rsm(t, a) = m.rs_minus;
            rsp(t, a) = m.rs_plus;
        }
    }

    std::vector<std::string> assets;
    assets.reserve(grids.size());
    for (const ReturnGrid& g : grids) assets.push_back(g.asset_id);
    return MeasurePanel(std::move(assets), std::move(common), std::move(rv), std::move(rsm),
                        std::move(rsp));
}

}  // namespace spillover
