#include "spillover/var.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "spillover/errors.hpp"

namespace spillover {
namespace {

// Regression pair for rows [offset, T): response y_t on
// [1, y_{t-1}', ..., y_{t-p}'].
void build_design(const Eigen::MatrixXd& window, int p, int offset, Eigen::MatrixXd& y,
                  Eigen::MatrixXd& x) {
    const Eigen::Index T = window.rows();
    const Eigen::Index N = window.cols();
    const Eigen::Index T_eff = T - offset;
    y = window.bottomRows(T_eff);
    x.resize(T_eff, N * p + 1);
    x.col(0).setOnes();
    for (int j = 1; j <= p; ++j) {
        x.middleCols(1 + (j - 1) * N, N) = window.middleRows(offset - j, T_eff);
    }
}

struct LsSolution {
    Eigen::MatrixXd coef;       // (N*p + 1) x N
    Eigen::MatrixXd residuals;  // T_eff x N
    double condition = 0.0;
};

LsSolution solve_ls(const Eigen::MatrixXd& y, const Eigen::MatrixXd& x,
                    const FitOptions& options) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    const Eigen::VectorXd r_diag = qr.matrixR()
                                       .topLeftCorner(x.cols(), x.cols())
                                       .diagonal()
                                       .cwiseAbs();
    const double r_max = r_diag.maxCoeff();
    const double r_min = r_diag.minCoeff();
    const double condition =
        r_min > 0.0 ? r_max / r_min : std::numeric_limits<double>::infinity();
    if (qr.rank() < x.cols() || condition > options.condition_limit) {
        throw SingularDesignError(
            "regressor cross-moment matrix is numerically singular (condition estimate " +
                std::to_string(condition) + ")",
            condition);
    }
    LsSolution out;
    out.coef = qr.solve(y);
    out.residuals = y - x * out.coef;
    out.condition = condition;
    return out;
}

}  // namespace

VarModel fit_var(const Eigen::MatrixXd& window, int p, const FitOptions& options) {
    const Eigen::Index T = window.rows();
    const Eigen::Index N = window.cols();
    if (p < 1) throw std::invalid_argument("fit_var: lag order must be >= 1");
    if (N < 1) throw std::invalid_argument("fit_var: empty window");
    if (!window.allFinite()) throw std::invalid_argument("fit_var: window has non-finite values");
    const Eigen::Index k = N * p + 1;
    const Eigen::Index T_eff = T - p;
    // Divisor of the covariance estimate is T_eff - k; it must be positive.
    if (T_eff < k + 1) {
        throw InsufficientDataError("fit_var: window too short for lag order (need T - p >= N*p + 2, have T = " +
                                    std::to_string(T) + ", p = " + std::to_string(p) + ")");
    }

    Eigen::MatrixXd y, x;
    build_design(window, p, p, y, x);
    LsSolution ls = solve_ls(y, x, options);

    VarModel model;
    model.p = p;
    model.n_obs = static_cast<int>(T_eff);
    model.design_condition = ls.condition;
    model.intercept = ls.coef.row(0).transpose();
    model.phi.reserve(static_cast<std::size_t>(p));
    for (int j = 1; j <= p; ++j) {
        model.phi.push_back(ls.coef.middleRows(1 + (j - 1) * N, N).transpose());
    }
    Eigen::MatrixXd cross = ls.residuals.transpose() * ls.residuals;
    model.sigma = (cross + cross.transpose()) / (2.0 * static_cast<double>(T_eff - k));
    return model;
}

MaCoefficients ma_coefficients(const VarModel& model, int horizon) {
    if (horizon < 1) throw std::invalid_argument("ma_coefficients: horizon must be >= 1");
    const int N = model.dim();
    MaCoefficients ma;
    ma.psi.reserve(static_cast<std::size_t>(horizon));
    ma.psi.push_back(Eigen::MatrixXd::Identity(N, N));
    for (int h = 1; h < horizon; ++h) {
        Eigen::MatrixXd psi_h = Eigen::MatrixXd::Zero(N, N);
        const int j_max = std::min(h, model.p);
        for (int j = 1; j <= j_max; ++j) {
            psi_h += model.phi[static_cast<std::size_t>(j - 1)] *
                     ma.psi[static_cast<std::size_t>(h - j)];
        }
        ma.psi.push_back(std::move(psi_h));
    }
    return ma;
}

double stability_check(const VarModel& model) {
    const int N = model.dim();
    const int np = N * model.p;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(np, np);
    for (int j = 0; j < model.p; ++j) {
        companion.block(0, j * N, N, N) = model.phi[static_cast<std::size_t>(j)];
    }
    if (model.p > 1) {
        companion.block(N, 0, np - N, np - N).setIdentity();
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(companion, /*computeEigenvectors=*/false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

int select_lag_aic(const Eigen::MatrixXd& window, int p_max, const FitOptions& options) {
    if (p_max < 1) throw std::invalid_argument("select_lag_aic: p_max must be >= 1");
    const Eigen::Index N = window.cols();
    const Eigen::Index T_c = window.rows() - p_max;
    if (T_c < N * p_max + 2) {
        throw InsufficientDataError("select_lag_aic: window too short for p_max");
    }

    int best_p = 0;
    double best_aic = std::numeric_limits<double>::infinity();
    for (int p = 1; p <= p_max; ++p) {
        Eigen::MatrixXd y, x;
        build_design(window, p, p_max, y, x);
        LsSolution ls;
        try {
            ls = solve_ls(y, x, options);
        } catch (const SingularDesignError&) {
            continue;
        }
        Eigen::MatrixXd sigma_mle =
            ls.residuals.transpose() * ls.residuals / static_cast<double>(T_c);
        const double det = sigma_mle.partialPivLu().determinant();
        if (!(det > 0.0)) continue;
        const double n_params = static_cast<double>(p) * N * N + N;
        const double aic = std::log(det) + 2.0 * n_params / static_cast<double>(T_c);
        if (aic < best_aic) {
            best_aic = aic;
            best_p = p;
        }
    }
    if (best_p == 0) {
        throw SingularDesignError("select_lag_aic: no candidate lag has a non-singular design",
                                  std::numeric_limits<double>::infinity());
    }
    return best_p;
}

}  // namespace spillover
