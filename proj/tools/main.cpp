#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "spillover/errors.hpp"
#include "spillover/gfevd.hpp"
#include "spillover/io.hpp"
#include "spillover/pipeline.hpp"
#include "spillover/rolling.hpp"
#include "spillover/synth.hpp"
#include "spillover/var.hpp"

namespace fs = std::filesystem;
using namespace spillover;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(text);
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    return out;
}

struct CommonOutput {
    std::string output_dir = ".";

    fs::path resolve(const std::string& name) const {
        fs::create_directories(output_dir);
        return fs::path(output_dir) / name;
    }
};

void add_output_option(CLI::App* cmd, CommonOutput& out) {
    cmd->add_option("--output-dir", out.output_dir, "Directory for output files")
        ->envname("SPILLOVER_OUTPUT_DIR")
        ->capture_default_str();
}

struct SessionFlags {
    std::string start = "09:00";
    std::string end = "14:30";
    std::string utc_offset = "-05:00";
    std::string calendar_file;
    bool keep_weekends = false;
    bool keep_year_end = false;

    SessionCalendar build() const {
        SessionCalendar cal;
        cal.session_start = TimeOfDay::parse(start);
        cal.session_end = TimeOfDay::parse(end);
        cal.utc_offset_minutes = parse_utc_offset_minutes(utc_offset);
        cal.weekend_rule = !keep_weekends;
        cal.year_end_rule = !keep_year_end;
        if (!calendar_file.empty()) {
            std::ifstream file(calendar_file);
            if (!file) throw Error("cannot open calendar file '" + calendar_file + "'");
            cal.excluded_dates = load_date_list(file);
        }
        cal.validate();
        return cal;
    }
};

void add_session_options(CLI::App* cmd, SessionFlags& flags) {
    cmd->add_option("--session-start", flags.start, "Session opening time, HH:MM")
        ->capture_default_str();
    cmd->add_option("--session-end", flags.end, "Session closing time, HH:MM")
        ->capture_default_str();
    cmd->add_option("--utc-offset", flags.utc_offset,
                    "Fixed UTC offset of the session clock (default EST)")
        ->capture_default_str();
    cmd->add_option("--calendar", flags.calendar_file,
                    "Holiday file: one ISO date per line, '#' comments");
    cmd->add_flag("--keep-weekends", flags.keep_weekends, "Do not drop Saturdays/Sundays");
    cmd->add_flag("--keep-year-end", flags.keep_year_end,
                  "Do not drop Dec 24-26 and Dec 31-Jan 2");
}

struct RollingFlags {
    int window = 200;
    int horizon = 10;
    int lag = 2;
    int aic_max_lag = 0;
    int threads = 1;
    std::string measures = "rv,rsp,rsm";
    std::string convention = "table";
    bool sigma_stddev = false;
    bool log_transform = false;
    bool no_stability = false;

    RollingConfig build() const {
        RollingConfig cfg;
        cfg.window_length = window;
        cfg.horizon = horizon;
        cfg.lag = lag;
        cfg.aic_max_lag = aic_max_lag;
        cfg.workers = threads;
        cfg.kinds.clear();
        for (const std::string& token : split(measures, ',')) {
            cfg.kinds.push_back(parse_measure_kind(token));
        }
        if (convention == "table") {
            cfg.reporting = ReportingConvention::table;
        } else if (convention == "eqN") {
            cfg.reporting = ReportingConvention::eq_n;
        } else {
            throw Error("unknown convention '" + convention + "' (expected table or eqN)");
        }
        cfg.sigma_convention =
            sigma_stddev ? SigmaConvention::stddev : SigmaConvention::variance;
        cfg.log_transform = log_transform;
        cfg.compute_stability = !no_stability;
        return cfg;
    }
};

void add_rolling_options(CLI::App* cmd, RollingFlags& flags) {
    cmd->add_option("--window", flags.window, "Rolling window length in days")
        ->capture_default_str();
    cmd->add_option("--horizon", flags.horizon, "Forecast horizon H")->capture_default_str();
    cmd->add_option("--lag", flags.lag, "VAR lag order p")->capture_default_str();
    cmd->add_option("--aic-max-lag", flags.aic_max_lag,
                    "Select the lag per window by AIC over 1..p_max (0 = fixed --lag)")
        ->capture_default_str();
    cmd->add_option("--measures", flags.measures, "Measure kinds to run (comma separated)")
        ->capture_default_str();
    cmd->add_option("--convention", flags.convention,
                    "Directional reporting convention: table or eqN")
        ->capture_default_str();
    cmd->add_flag("--sigma-stddev", flags.sigma_stddev,
                  "Scale shocks by the residual standard deviation instead of the variance");
    cmd->add_flag("--log-transform", flags.log_transform, "Fit the VAR on log measures");
    cmd->add_flag("--no-stability", flags.no_stability, "Skip spectral-radius diagnostics");
    cmd->add_option("--threads", flags.threads, "Worker threads for the window sweep")
        ->capture_default_str();
}

MeasurePanel load_panel(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw Error("cannot open panel file '" + path + "'");
    return read_panel_csv(file);
}

int cmd_ingest(const std::vector<std::string>& asset_args, const SessionFlags& session,
               int interval_min, int min_ticks, bool header, const CommonOutput& out) {
    std::vector<AssetInput> inputs;
    for (const std::string& arg : asset_args) {
        auto eq = arg.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == arg.size()) {
            throw Error("--asset expects id=path[,path...], got '" + arg + "'");
        }
        inputs.push_back(AssetInput{arg.substr(0, eq), split(arg.substr(eq + 1), ',')});
    }
    IngestOptions options;
    options.calendar = session.build();
    options.sampling.interval_ns = static_cast<std::int64_t>(interval_min) * 60 * kNsPerSecond;
    options.sampling.min_ticks_per_day = static_cast<std::size_t>(min_ticks);
    options.skip_header = header;

    IngestResult result = run_ingestion(inputs, options);
    {
        auto f = open_output(out.resolve("panel.csv"));
        write_panel_csv(f, result.panel);
    }
    {
        auto f = open_output(out.resolve("ingest_report.csv"));
        write_ingest_report_csv(f, result.report);
    }
    std::cout << "panel: " << result.panel.n_dates() << " days x " << result.panel.n_assets()
              << " assets -> " << out.resolve("panel.csv").string() << '\n';
    return 0;
}

int cmd_spillovers(const std::string& panel_path, const RollingFlags& flags,
                   const CommonOutput& out) {
    MeasurePanel panel = load_panel(panel_path);
    RollingConfig cfg = flags.build();
    const bool has_sam =
        std::count(cfg.kinds.begin(), cfg.kinds.end(), MeasureKind::rs_plus) > 0 &&
        std::count(cfg.kinds.begin(), cfg.kinds.end(), MeasureKind::rs_minus) > 0;
    if (!has_sam) {
        std::cerr << "warning: SAM needs both semivariance measures (rsp and rsm); "
                     "sam columns will be empty\n";
    }
    SpilloverSeries series = run_rolling(panel, cfg);
    {
        auto f = open_output(out.resolve("total.csv"));
        write_total_csv(f, series);
    }
    {
        auto f = open_output(out.resolve("directional.csv"));
        write_directional_csv(f, series);
    }
    {
        auto f = open_output(out.resolve("pairwise.csv"));
        write_pairwise_csv(f, series);
    }
    {
        auto f = open_output(out.resolve("diagnostics.csv"));
        write_diagnostics_csv(f, series);
    }
    std::cout << "spillovers: " << series.dates.size() << " windows -> " << out.output_dir
              << '\n';
    return 0;
}

int cmd_fevd(const std::string& matrix_path, const std::string& panel_path,
             const std::string& date_text, const std::string& measure,
             const RollingFlags& flags) {
    if (!matrix_path.empty()) {
        std::ifstream file(matrix_path);
        if (!file) throw Error("cannot open matrix file '" + matrix_path + "'");
        std::vector<std::string> names;
        Eigen::MatrixXd percent = read_matrix_csv(file, &names);
        if (names.empty()) {
            for (Eigen::Index i = 0; i < percent.rows(); ++i) {
                names.push_back("v" + std::to_string(i + 1));
            }
        }
        render_fevd_table(std::cout, names, percent / 100.0);
        return 0;
    }
    if (panel_path.empty() || date_text.empty()) {
        throw Error("fevd needs either --matrix-csv or both --panel and --date");
    }
    MeasurePanel panel = load_panel(panel_path);
    RollingConfig cfg = flags.build();
    cfg.validate(panel.n_assets());
    const Date date = Date::parse(date_text);
    const auto& dates = panel.dates();
    const int first_end = cfg.window_length - 1;
    if (panel.n_dates() < cfg.window_length) {
        throw Error("panel shorter than the rolling window");
    }
    auto it = std::lower_bound(dates.begin(), dates.end(), date);
    const int idx = static_cast<int>(it - dates.begin());
    if (it == dates.end() || *it != date || idx < first_end) {
        std::string hint;
        // nearest valid endpoints on either side
        auto lo = std::lower_bound(dates.begin() + first_end, dates.end(), date);
        if (lo != dates.begin() + first_end) {
            hint += " " + (lo - 1)->to_string();
        }
        if (lo != dates.end()) {
            if (*lo == date) ++lo;
            if (lo != dates.end()) hint += " " + lo->to_string();
        }
        throw Error("date " + date.to_string() +
                    " is not a window endpoint; nearest valid dates:" + hint);
    }

    const MeasureKind kind = parse_measure_kind(measure);
    Eigen::MatrixXd window =
        panel.values(kind).middleRows(idx - cfg.window_length + 1, cfg.window_length);
    if (cfg.log_transform) {
        if ((window.array() <= 0.0).any()) {
            throw Error("log transform requested but the window has non-positive values");
        }
        window = window.array().log().matrix();
    }
    const int lag = cfg.aic_max_lag > 0 ? select_lag_aic(window, cfg.aic_max_lag) : cfg.lag;
    VarModel model = fit_var(window, lag);
    MaCoefficients psi = ma_coefficients(model, cfg.horizon);
    FevdMatrix fevd = compute_fevd(psi, model.sigma, cfg.horizon, cfg.sigma_convention);
    std::cout << "window " << dates[static_cast<std::size_t>(idx - cfg.window_length + 1)]
                     .to_string()
              << ".." << date.to_string() << "  measure " << measure_kind_token(kind)
              << "  H=" << cfg.horizon << "  p=" << lag << '\n';
    render_fevd_table(std::cout, panel.assets(), fevd.normalized);
    return 0;
}

Eigen::MatrixXd json_matrix(const nlohmann::json& rows, const std::string& what) {
    if (!rows.is_array() || rows.empty()) throw Error("model file: " + what + " must be an array");
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd m(n, static_cast<Eigen::Index>(rows[0].size()));
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (static_cast<Eigen::Index>(row.size()) != m.cols()) {
            throw Error("model file: " + what + " rows have uneven lengths");
        }
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            m(i, j) = row[static_cast<std::size_t>(j)].get<double>();
        }
    }
    return m;
}

int cmd_synth(int assets, int lag, int t_obs, std::uint64_t seed, double phi_diag,
              double phi_cross, double sigma_diag, double sigma_cross, double mean_shift,
              bool mirror, const std::string& start_date, const std::string& model_file,
              const CommonOutput& out) {
    SynthSpec spec;
    spec.t_obs = t_obs;
    spec.seed = seed;
    if (!model_file.empty()) {
        std::ifstream file(model_file);
        if (!file) throw Error("cannot open model file '" + model_file + "'");
        nlohmann::json doc = nlohmann::json::parse(file);
        spec.sigma = json_matrix(doc.at("sigma"), "sigma");
        spec.n_assets = static_cast<int>(spec.sigma.rows());
        spec.p = doc.at("p").get<int>();
        for (const auto& phi : doc.at("phi")) {
            spec.phi.push_back(json_matrix(phi, "phi"));
        }
        if (static_cast<int>(spec.phi.size()) != spec.p) {
            throw Error("model file: phi must list p matrices");
        }
    } else {
        spec.n_assets = assets;
        spec.p = lag;
        Eigen::MatrixXd phi1 = Eigen::MatrixXd::Constant(assets, assets, phi_cross);
        phi1.diagonal().setConstant(phi_diag);
        spec.phi.assign(1, phi1);
        for (int j = 1; j < lag; ++j) {
            spec.phi.push_back(Eigen::MatrixXd::Zero(assets, assets));
        }
        spec.sigma = Eigen::MatrixXd::Constant(assets, assets, sigma_cross);
        spec.sigma.diagonal().setConstant(sigma_diag);
    }

    // Two independent seed branches: one per semivariance panel.
    SynthSpec minus_spec = spec;
    minus_spec.seed = derive_seed(seed, 0);
    Eigen::MatrixXd rsm = simulate_var(minus_spec).array() + mean_shift;
    Eigen::MatrixXd rsp;
    if (mirror) {
        rsp = rsm;
    } else {
        SynthSpec plus_spec = spec;
        plus_spec.seed = derive_seed(seed, 1);
        rsp = simulate_var(plus_spec).array() + mean_shift;
    }
    Eigen::MatrixXd rv = rsm + rsp;

    std::vector<Date> dates;
    Date d = Date::parse(start_date);
    for (int t = 0; t < t_obs; ++t) {
        dates.push_back(d);
        d = d.next();
    }
    std::vector<std::string> names;
    for (int a = 0; a < spec.n_assets; ++a) names.push_back("a" + std::to_string(a + 1));
    MeasurePanel panel(std::move(names), std::move(dates), std::move(rv), std::move(rsm),
                       std::move(rsp));
    auto f = open_output(out.resolve("panel.csv"));
    write_panel_csv(f, panel);
    std::cout << "synth: " << t_obs << " days x " << spec.n_assets << " assets -> "
              << out.resolve("panel.csv").string() << '\n';
    return 0;
}

int cmd_summarize(const std::string& input, const std::string& breaks_text,
                  const std::string& out_path) {
    std::ifstream file(input);
    if (!file) throw Error("cannot open '" + input + "'");
    std::string line;
    if (!std::getline(file, line)) throw Error("'" + input + "' is empty");
    std::vector<std::string> header = split(line, ',');
    if (header.size() < 2 || header[0] != "date") {
        throw Error("summarize expects a date-keyed CSV (first column 'date')");
    }

    std::vector<Date> dates;
    std::vector<std::vector<double>> columns(header.size() - 1);
    std::size_t line_no = 1;
    while (std::getline(file, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields = split(line, ',');
        fields.resize(header.size());
        dates.push_back(Date::parse(fields[0]));
        for (std::size_t c = 1; c < header.size(); ++c) {
            double value = std::numeric_limits<double>::quiet_NaN();
            if (!fields[c].empty()) {
                try {
                    value = std::stod(fields[c]);
                } catch (const std::exception&) {
                    throw ParseError("malformed number '" + fields[c] + "'", line_no);
                }
            }
            columns[c - 1].push_back(value);
        }
    }
    if (dates.empty()) throw Error("'" + input + "' has no data rows");

    std::vector<Date> breaks;
    if (!breaks_text.empty()) {
        for (const std::string& token : split(breaks_text, ',')) {
            breaks.push_back(Date::parse(token));
        }
    }
    std::vector<DateRange> ranges = ranges_from_breaks(dates.front(), dates.back(), breaks);

    std::vector<SummaryRow> rows;
    for (const DateRange& range : ranges) {
        auto lo = std::lower_bound(dates.begin(), dates.end(), range.first);
        auto hi = std::upper_bound(dates.begin(), dates.end(), range.last);
        if (lo >= hi) throw Error("range '" + range.label + "' selects no rows");
        for (std::size_t c = 0; c < columns.size(); ++c) {
            double sum = 0.0, sum_sq = 0.0;
            int n = 0;
            for (auto it = lo; it != hi; ++it) {
                const double v = columns[c][static_cast<std::size_t>(it - dates.begin())];
                if (std::isnan(v)) continue;
                sum += v;
                sum_sq += v * v;
                ++n;
            }
            SummaryRow row;
            row.range = range.label;
            row.series = header[c + 1];
            row.n = n;
            row.mean = n > 0 ? sum / n : std::numeric_limits<double>::quiet_NaN();
            row.sd = n > 1 ? std::sqrt(std::max(0.0, (sum_sq - n * row.mean * row.mean) / (n - 1)))
                           : (n == 1 ? 0.0 : std::numeric_limits<double>::quiet_NaN());
            rows.push_back(row);
        }
    }
    if (out_path.empty()) {
        write_summary_csv(std::cout, rows);
    } else {
        auto f = open_output(out_path);
        write_summary_csv(f, rows);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Asymmetric volatility spillovers from high-frequency data"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a key=value file (flags override)");

    // ingest
    auto* ingest = app.add_subcommand(
        "ingest", "Build the realized-measure panel from raw tick CSVs");
    std::vector<std::string> asset_args;
    SessionFlags session;
    int interval_min = 5;
    int min_ticks = 10;
    bool header = false;
    CommonOutput ingest_out;
    ingest->add_option("--asset", asset_args, "Asset input, id=path[,path...] (repeatable)")
        ->required();
    add_session_options(ingest, session);
    ingest->add_option("--interval-min", interval_min, "Sampling interval in minutes")
        ->capture_default_str();
    ingest->add_option("--min-ticks", min_ticks, "Minimum trades per day to keep the day")
        ->capture_default_str();
    ingest->add_flag("--header", header, "Inputs carry a header row");
    add_output_option(ingest, ingest_out);

    // spillovers
    auto* spill = app.add_subcommand(
        "spillovers", "Rolling VAR/FEVD sweep producing the spillover index CSVs");
    std::string spill_panel = "panel.csv";
    RollingFlags spill_flags;
    CommonOutput spill_out;
    spill->add_option("--panel", spill_panel, "Input panel CSV")->capture_default_str();
    add_rolling_options(spill, spill_flags);
    add_output_option(spill, spill_out);

    // fevd
    auto* fevd = app.add_subcommand("fevd", "Print one window's decomposition table");
    std::string fevd_matrix, fevd_panel, fevd_date, fevd_measure = "rv";
    RollingFlags fevd_flags;
    fevd->add_option("--matrix-csv", fevd_matrix,
                     "Print margins for an externally supplied percent matrix");
    fevd->add_option("--panel", fevd_panel, "Input panel CSV");
    fevd->add_option("--date", fevd_date, "Window end date (ISO)");
    fevd->add_option("--measure", fevd_measure, "Measure kind: rv, rsm, rsp")
        ->capture_default_str();
    add_rolling_options(fevd, fevd_flags);

    // synth
    auto* synth = app.add_subcommand(
        "synth", "Write a simulated panel from a known stable VAR process");
    int synth_assets = 3, synth_lag = 1, synth_t = 1000;
    std::uint64_t synth_seed = 12345;
    double phi_diag = 0.25, phi_cross = 0.05, sigma_diag = 0.05, sigma_cross = 0.01;
    double mean_shift = 1.0;
    bool mirror = false;
    std::string synth_start = "2000-01-01", model_file;
    CommonOutput synth_out;
    synth->add_option("--assets", synth_assets, "Number of assets")->capture_default_str();
    synth->add_option("--lag", synth_lag, "Lag order of the generating VAR")
        ->capture_default_str();
    synth->add_option("--t", synth_t, "Number of days")->capture_default_str();
    synth->add_option("--seed", synth_seed, "RNG seed")->capture_default_str();
    synth->add_option("--phi-diag", phi_diag, "Diagonal of Phi_1")->capture_default_str();
    synth->add_option("--phi-cross", phi_cross, "Off-diagonal of Phi_1")->capture_default_str();
    synth->add_option("--sigma-diag", sigma_diag, "Diagonal of the shock covariance")
        ->capture_default_str();
    synth->add_option("--sigma-cross", sigma_cross, "Off-diagonal of the shock covariance")
        ->capture_default_str();
    synth->add_option("--mean-shift", mean_shift, "Constant added to the simulated series")
        ->capture_default_str();
    synth->add_flag("--mirror", mirror, "Make the rsp columns identical to rsm");
    synth->add_option("--start-date", synth_start, "Date of the first row")
        ->capture_default_str();
    synth->add_option("--model-file", model_file,
                      "JSON file with p, phi (list of matrices), sigma");
    add_output_option(synth, synth_out);

    // summarize
    auto* summ = app.add_subcommand(
        "summarize", "Per-range mean/sd of the numeric columns of a date-keyed CSV");
    std::string summ_input = "total.csv", summ_breaks, summ_out;
    summ->add_option("--input", summ_input, "Input CSV (e.g. total.csv)")
        ->capture_default_str();
    summ->add_option("--breaks", summ_breaks,
                     "Comma-separated break dates; each starts a new range");
    summ->add_option("--out", summ_out, "Output CSV (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(ingest)) {
            return cmd_ingest(asset_args, session, interval_min, min_ticks, header, ingest_out);
        }
        if (app.got_subcommand(spill)) {
            return cmd_spillovers(spill_panel, spill_flags, spill_out);
        }
        if (app.got_subcommand(fevd)) {
            return cmd_fevd(fevd_matrix, fevd_panel, fevd_date, fevd_measure, fevd_flags);
        }
        if (app.got_subcommand(synth)) {
            return cmd_synth(synth_assets, synth_lag, synth_t, synth_seed, phi_diag, phi_cross,
                             sigma_diag, sigma_cross, mean_shift, mirror, synth_start,
                             model_file, synth_out);
        }
        if (app.got_subcommand(summ)) {
            return cmd_summarize(summ_input, summ_breaks, summ_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
