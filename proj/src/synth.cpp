#include "spillover/synth.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

#include "spillover/errors.hpp"

namespace spillover {
namespace {

constexpr int kBurnIn = 1000;
constexpr int kMcChunk = 4096;

double to_unit_interval(std::uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

Eigen::MatrixXd cholesky_factor(const Eigen::MatrixXd& sigma) {
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument("sigma must be symmetric positive definite");
    }
    return llt.matrixL();
}

void check_stable(const VarModel& model, const char* who) {
    const double radius = stability_check(model);
    if (!(radius < 1.0)) {
        throw std::invalid_argument(std::string(who) + ": process is not stable (companion radius " +
                                    std::to_string(radius) + ")");
    }
}

// One VAR step into `state` ring buffer; `lags[j]` holds y_{t-1-j}.
Eigen::VectorXd var_step(const VarModel& model, const std::vector<Eigen::VectorXd>& lags,
                         const Eigen::VectorXd& shock) {
    Eigen::VectorXd y = shock;
    for (int j = 0; j < model.p; ++j) {
        y += model.phi[static_cast<std::size_t>(j)] * lags[static_cast<std::size_t>(j)];
    }
    return y;
}

void push_lag(std::vector<Eigen::VectorXd>& lags, Eigen::VectorXd y) {
    for (std::size_t j = lags.size(); j-- > 1;) {
        lags[j] = std::move(lags[j - 1]);
    }
    lags[0] = std::move(y);
}

}  // namespace

double GaussianSampler::next() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = to_unit_interval(engine_()) + 0x1.0p-53;  // (0, 1]
    const double u2 = to_unit_interval(engine_());              // [0, 1)
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finalizer on the (index+1)-th state after `seed`.
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

VarModel known_var(std::vector<Eigen::MatrixXd> phi, Eigen::MatrixXd sigma) {
    if (phi.empty()) throw std::invalid_argument("known_var: need at least one lag matrix");
    const Eigen::Index N = sigma.rows();
    for (const auto& m : phi) {
        if (m.rows() != N || m.cols() != N) {
            throw std::invalid_argument("known_var: inconsistent dimensions");
        }
    }
    VarModel model;
    model.p = static_cast<int>(phi.size());
    model.intercept = Eigen::VectorXd::Zero(N);
    model.phi = std::move(phi);
    model.sigma = std::move(sigma);
    model.n_obs = 0;
    return model;
}

Eigen::MatrixXd simulate_var(const SynthSpec& spec) {
    if (spec.n_assets < 1 || spec.t_obs < 1) {
        throw std::invalid_argument("simulate_var: n_assets and t_obs must be positive");
    }
    if (static_cast<int>(spec.phi.size()) != spec.p) {
        throw std::invalid_argument("simulate_var: phi list must have p matrices");
    }
    VarModel model = known_var(spec.phi, spec.sigma);
    if (model.dim() != spec.n_assets) {
        throw std::invalid_argument("simulate_var: sigma dimension != n_assets");
    }
    check_stable(model, "simulate_var");
    const Eigen::MatrixXd chol = cholesky_factor(spec.sigma);

    GaussianSampler rng(spec.seed);
    const Eigen::Index N = spec.n_assets;
    std::vector<Eigen::VectorXd> lags(static_cast<std::size_t>(spec.p),
                                      Eigen::VectorXd::Zero(N));
    Eigen::MatrixXd out(spec.t_obs, N);
    Eigen::VectorXd z(N);
    for (int t = -kBurnIn; t < spec.t_obs; ++t) {
        for (Eigen::Index i = 0; i < N; ++i) z(i) = rng.next();
        Eigen::VectorXd y = var_step(model, lags, chol * z);
        if (t >= 0) out.row(t) = y.transpose();
        push_lag(lags, std::move(y));
    }
    return out;
}

MaCoefficients impulse_psi(const VarModel& model, int horizon) {
    if (horizon < 1) throw std::invalid_argument("impulse_psi: horizon must be >= 1");
    const Eigen::Index N = model.dim();
    MaCoefficients ma;
    ma.psi.assign(static_cast<std::size_t>(horizon), Eigen::MatrixXd::Zero(N, N));
    for (Eigen::Index k = 0; k < N; ++k) {
        std::vector<Eigen::VectorXd> lags(static_cast<std::size_t>(model.p),
                                          Eigen::VectorXd::Zero(N));
        Eigen::VectorXd state = Eigen::VectorXd::Unit(N, k);
        ma.psi[0].col(k) = state;
        push_lag(lags, state);
        for (int h = 1; h < horizon; ++h) {
            state = var_step(model, lags, Eigen::VectorXd::Zero(N));
            ma.psi[static_cast<std::size_t>(h)].col(k) = state;
            push_lag(lags, state);
        }
    }
    return ma;
}

McForecastErrors mc_forecast_error_shares(const VarModel& model, int horizon, int n_paths,
                                          std::uint64_t seed, int workers) {
    if (horizon < 1) throw std::invalid_argument("mc_forecast_error_shares: horizon must be >= 1");
    if (n_paths < 2) throw std::invalid_argument("mc_forecast_error_shares: need at least 2 paths");
    check_stable(model, "mc_forecast_error_shares");
    const Eigen::MatrixXd chol = cholesky_factor(model.sigma);
    const Eigen::Index N = model.dim();

    const int n_chunks = (n_paths + kMcChunk - 1) / kMcChunk;
    std::vector<Eigen::MatrixXd> second_moment(static_cast<std::size_t>(n_chunks));
    std::vector<Eigen::VectorXd> fourth_moment(static_cast<std::size_t>(n_chunks));

    auto run_chunk = [&](int chunk) {
        Eigen::MatrixXd acc2 = Eigen::MatrixXd::Zero(N, N);
        Eigen::VectorXd acc4 = Eigen::VectorXd::Zero(N);
        const int begin = chunk * kMcChunk;
        const int end = std::min(n_paths, begin + kMcChunk);
        Eigen::VectorXd z(N);
        for (int path = begin; path < end; ++path) {
            GaussianSampler rng(derive_seed(seed, static_cast<std::uint64_t>(path)));
            std::vector<Eigen::VectorXd> lags(static_cast<std::size_t>(model.p),
                                              Eigen::VectorXd::Zero(N));
            Eigen::VectorXd y;
            for (int h = 1; h <= horizon; ++h) {
                for (Eigen::Index i = 0; i < N; ++i) z(i) = rng.next();
                y = var_step(model, lags, chol * z);
                push_lag(lags, y);
            }
            // y is the H-step-ahead forecast error: forecasts from a zero
            // state with zero intercept are identically zero.
            acc2 += y * y.transpose();
            acc4 += y.array().pow(4).matrix();
        }
        second_moment[static_cast<std::size_t>(chunk)] = std::move(acc2);
        fourth_moment[static_cast<std::size_t>(chunk)] = std::move(acc4);
    };

    if (workers <= 1 || n_chunks == 1) {
        for (int c = 0; c < n_chunks; ++c) run_chunk(c);
    } else {
        std::atomic<int> next_chunk{0};
        auto worker = [&] {
            for (int c = next_chunk.fetch_add(1); c < n_chunks; c = next_chunk.fetch_add(1)) {
                run_chunk(c);
            }
        };
        std::vector<std::jthread> pool;
        const int n_threads = std::min(workers, n_chunks);
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    }

    // Reduce in chunk order: the sum is identical for any worker count.
    Eigen::MatrixXd total2 = Eigen::MatrixXd::Zero(N, N);
    Eigen::VectorXd total4 = Eigen::VectorXd::Zero(N);
    for (int c = 0; c < n_chunks; ++c) {
        total2 += second_moment[static_cast<std::size_t>(c)];
        total4 += fourth_moment[static_cast<std::size_t>(c)];
    }

    McForecastErrors out;
    out.n_paths = n_paths;
    // Shocks have zero mean by construction, so the raw second moment
    // estimates the covariance directly.
    out.covariance = total2 / static_cast<double>(n_paths);
    out.variance_se.resize(N);
    for (Eigen::Index i = 0; i < N; ++i) {
        const double m2 = out.covariance(i, i);
        const double m4 = total4(i) / static_cast<double>(n_paths);
        const double var_of_var = std::max(0.0, m4 - m2 * m2) / static_cast<double>(n_paths);
        out.variance_se(i) = std::sqrt(var_of_var);
    }
    return out;
}

}  // namespace spillover
