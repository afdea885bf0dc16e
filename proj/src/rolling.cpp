#include "spillover/rolling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "spillover/errors.hpp"
#include "spillover/var.hpp"

namespace spillover {
namespace {

bool wants_kind(const RollingConfig& cfg, MeasureKind kind) {
    return std::find(cfg.kinds.begin(), cfg.kinds.end(), kind) != cfg.kinds.end();
}

// One (window, kind) evaluation; errors land in the diagnostics slot.
void evaluate_window(const Eigen::MatrixXd& window, const RollingConfig& cfg,
                     std::optional<SpilloverSet>& set, WindowDiagnostics& diag) {
    try {
        Eigen::MatrixXd transformed;
        const Eigen::MatrixXd* data = &window;
        if (cfg.log_transform) {
            if ((window.array() <= 0.0).any()) {
                diag.error = "nonpositive_log_input";
                return;
            }
            transformed = window.array().log().matrix();
            data = &transformed;
        }
        const int lag = cfg.aic_max_lag > 0 ? select_lag_aic(*data, cfg.aic_max_lag) : cfg.lag;
        diag.lag = lag;
        VarModel model = fit_var(*data, lag);
        diag.design_condition = model.design_condition;
        if (cfg.compute_stability) {
            diag.spectral_radius = stability_check(model);
        }
        MaCoefficients psi = ma_coefficients(model, cfg.horizon);
        FevdMatrix fevd = compute_fevd(psi, model.sigma, cfg.horizon, cfg.sigma_convention);
        diag.row_sum_err =
            (fevd.normalized.rowwise().sum().array() - 1.0).abs().maxCoeff();
        set = make_spillover_set(fevd.normalized, cfg.reporting);
    } catch (const SingularDesignError& e) {
        diag.design_condition = e.condition();
        diag.error = "singular_design";
    } catch (const DegenerateVarianceError&) {
        diag.error = "degenerate_variance";
    }
}

}  // namespace

void RollingConfig::validate(int n_assets) const {
    if (horizon < 1) throw std::invalid_argument("rolling: horizon must be >= 1");
    if (kinds.empty()) throw std::invalid_argument("rolling: no measure kinds selected");
    const int effective_lag = aic_max_lag > 0 ? aic_max_lag : lag;
    if (effective_lag < 1) throw std::invalid_argument("rolling: lag must be >= 1");
    if (window_length <= n_assets * effective_lag + effective_lag + 1) {
        throw std::invalid_argument(
            "rolling: window_length must exceed N*p + p + 1 (window " +
            std::to_string(window_length) + ", N = " + std::to_string(n_assets) +
            ", p = " + std::to_string(effective_lag) + ")");
    }
}

const KindSeries* SpilloverSeries::find(MeasureKind kind) const {
    for (const KindSeries& ks : kinds) {
        if (ks.kind == kind) return &ks;
    }
    return nullptr;
}

SpilloverSeries run_rolling(const MeasurePanel& panel, const RollingConfig& config) {
    config.validate(panel.n_assets());
    const int T = panel.n_dates();
    if (T < config.window_length) {
        throw InsufficientDataError("rolling: panel shorter than the window (" +
                                    std::to_string(T) + " < " +
                                    std::to_string(config.window_length) + ")");
    }
    const int n_windows = T - config.window_length + 1;

    SpilloverSeries series;
    series.assets = panel.assets();
    series.convention = config.reporting;
    series.horizon = config.horizon;
    series.window_length = config.window_length;
    series.dates.reserve(static_cast<std::size_t>(n_windows));
    for (int w = 0; w < n_windows; ++w) {
        series.dates.push_back(panel.dates()[static_cast<std::size_t>(
            w + config.window_length - 1)]);
    }
    for (MeasureKind kind : config.kinds) {
        KindSeries ks;
        ks.kind = kind;
        ks.sets.resize(static_cast<std::size_t>(n_windows));
        ks.diagnostics.resize(static_cast<std::size_t>(n_windows));
        series.kinds.push_back(std::move(ks));
    }
    const bool with_sam =
        wants_kind(config, MeasureKind::rs_plus) && wants_kind(config, MeasureKind::rs_minus);
    series.sam.resize(static_cast<std::size_t>(n_windows));

    auto run_window = [&](int w) {
        for (KindSeries& ks : series.kinds) {
            const Eigen::MatrixXd block = panel.values(ks.kind).middleRows(w, config.window_length);
            evaluate_window(block, config, ks.sets[static_cast<std::size_t>(w)],
                            ks.diagnostics[static_cast<std::size_t>(w)]);
        }
        if (with_sam) {
            const auto& plus = series.find(MeasureKind::rs_plus)->sets[static_cast<std::size_t>(w)];
            const auto& minus =
                series.find(MeasureKind::rs_minus)->sets[static_cast<std::size_t>(w)];
            if (plus && minus) {
                series.sam[static_cast<std::size_t>(w)] = make_sam_point(*plus, *minus);
            }
        }
    };

    if (config.workers <= 1) {
        for (int w = 0; w < n_windows; ++w) run_window(w);
    } else {
        // Windows are independent read-only slices writing to disjoint
        // slots; assembly order is fixed by index.
        std::atomic<int> next{0};
        auto worker = [&] {
            for (int w = next.fetch_add(1); w < n_windows; w = next.fetch_add(1)) {
                run_window(w);
            }
        };
        std::vector<std::jthread> pool;
        const int n_threads = std::min(config.workers, n_windows);
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    }
    return series;
}

namespace {

struct Accumulator {
    double sum = 0.0;
    double sum_sq = 0.0;
    int n = 0;

    void add(double x) {
        if (std::isnan(x)) return;
        sum += x;
        sum_sq += x * x;
        ++n;
    }
    double mean() const { return n > 0 ? sum / n : std::numeric_limits<double>::quiet_NaN(); }
    double sd() const {
        if (n == 0) return std::numeric_limits<double>::quiet_NaN();
        if (n == 1) return 0.0;
        const double m = mean();
        return std::sqrt(std::max(0.0, (sum_sq - n * m * m) / (n - 1)));
    }
};

SummaryRow make_row(const std::string& range, const std::string& series, const Accumulator& acc) {
    return SummaryRow{range, series, acc.mean(), acc.sd(), acc.n};
}

}  // namespace

std::vector<SummaryRow> summarize(const SpilloverSeries& series,
                                  const std::vector<DateRange>& ranges) {
    if (series.dates.empty()) throw InsufficientDataError("summarize: empty series");
    std::vector<SummaryRow> rows;
    for (const DateRange& range : ranges) {
        auto lo = std::lower_bound(series.dates.begin(), series.dates.end(), range.first);
        auto hi = std::upper_bound(series.dates.begin(), series.dates.end(), range.last);
        if (lo >= hi) {
            throw InsufficientDataError("summarize: range '" + range.label +
                                        "' selects no dates");
        }
        const std::size_t begin = static_cast<std::size_t>(lo - series.dates.begin());
        const std::size_t end = static_cast<std::size_t>(hi - series.dates.begin());

        for (const KindSeries& ks : series.kinds) {
            const std::string token = measure_kind_token(ks.kind);
            Accumulator total;
            std::vector<Accumulator> from(series.assets.size()), to(series.assets.size()),
                net(series.assets.size());
            for (std::size_t w = begin; w < end; ++w) {
                if (!ks.sets[w]) continue;
                const SpilloverSet& set = *ks.sets[w];
                total.add(set.total);
                for (std::size_t a = 0; a < series.assets.size(); ++a) {
                    from[a].add(set.from_others(static_cast<Eigen::Index>(a)));
                    to[a].add(set.to_others(static_cast<Eigen::Index>(a)));
                    net[a].add(set.net(static_cast<Eigen::Index>(a)));
                }
            }
            rows.push_back(make_row(range.label, "total_" + token, total));
            for (std::size_t a = 0; a < series.assets.size(); ++a) {
                rows.push_back(make_row(range.label, "from_" + token + "_" + series.assets[a],
                                        from[a]));
                rows.push_back(
                    make_row(range.label, "to_" + token + "_" + series.assets[a], to[a]));
                rows.push_back(
                    make_row(range.label, "net_" + token + "_" + series.assets[a], net[a]));
            }
        }

        Accumulator sam_acc;
        for (std::size_t w = begin; w < end; ++w) {
            if (series.sam[w]) sam_acc.add(series.sam[w]->sam);
        }
        rows.push_back(make_row(range.label, "sam", sam_acc));
    }
    return rows;
}

std::vector<DateRange> ranges_from_breaks(Date first, Date last,
                                          const std::vector<Date>& breaks) {
    std::vector<Date> sorted = breaks;
    std::sort(sorted.begin(), sorted.end());
    std::vector<DateRange> ranges;
    Date start = first;
    for (Date b : sorted) {
        if (b <= start || b > last) continue;
        ranges.push_back(DateRange{start.to_string() + ".." + Date(b.days() - 1).to_string(),
                                   start, Date(b.days() - 1)});
        start = b;
    }
    ranges.push_back(DateRange{start.to_string() + ".." + last.to_string(), start, last});
    return ranges;
}

}  // namespace spillover
