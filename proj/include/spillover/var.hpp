#pragma once

#include <Eigen/Dense>
#include <vector>

namespace spillover {

// Covariance-stationary VAR(p) fitted by equation-by-equation least
// squares with an intercept.
struct VarModel {
    int p = 0;
    Eigen::VectorXd intercept;            // N
    std::vector<Eigen::MatrixXd> phi;     // p matrices, N x N
    Eigen::MatrixXd sigma;                // residual covariance, symmetric PSD
    int n_obs = 0;                        // effective sample size (rows - p)
    double design_condition = 0.0;        // condition estimate of the regressor matrix

    int dim() const { return static_cast<int>(intercept.size()); }
};

// Moving-average coefficients Psi_0..Psi_{H-1}; Psi_0 is the identity.
struct MaCoefficients {
    std::vector<Eigen::MatrixXd> psi;

    int horizon() const { return static_cast<int>(psi.size()); }
};

struct FitOptions {
    // Condition estimate above which the design is treated as singular.
    double condition_limit = 1e12;
};

// Least-squares VAR(p) fit on a T_w x N window. The residual covariance
// uses the degrees-of-freedom divisor (T_w - p) - (N*p + 1), so it needs
// T_w - p >= N*p + 2. Throws SingularDesignError when the regressor
// matrix is numerically singular (e.g. a constant column, which is
// collinear with the intercept).
VarModel fit_var(const Eigen::MatrixXd& window, int p, const FitOptions& options = {});

// Psi_0 = I, Psi_h = sum_{j=1..min(h,p)} Phi_j Psi_{h-j}.
MaCoefficients ma_coefficients(const VarModel& model, int horizon);

// Spectral radius of the (N*p) x (N*p) companion matrix. Values >= 1
// indicate a non-stationary window.
double stability_check(const VarModel& model);

// Smallest-AIC lag over p in {1..p_max}. All candidates are fitted on a
// common effective sample (rows p_max..T_w-1) so the criteria are
// comparable. Ties resolve to the smaller lag.
int select_lag_aic(const Eigen::MatrixXd& window, int p_max, const FitOptions& options = {});

}  // namespace spillover
