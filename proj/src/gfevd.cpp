#include "spillover/gfevd.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "spillover/errors.hpp"

namespace spillover {
namespace {

constexpr double kPsdTolerance = 1e-10;

// Validates symmetry/PSD-ness; returns sigma with any eigenvalue in
// [-kPsdTolerance, 0) clipped to zero, or sigma itself when already PSD.
Eigen::MatrixXd checked_sigma(const Eigen::MatrixXd& sigma) {
    if (sigma.rows() != sigma.cols()) {
        throw std::invalid_argument("gfevd: sigma must be square");
    }
    const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
    if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
        throw std::invalid_argument("gfevd: sigma must be symmetric");
    }
    for (Eigen::Index j = 0; j < sigma.cols(); ++j) {
        if (!(sigma(j, j) > 0.0)) {
            throw DegenerateVarianceError(
                "gfevd: sigma has a non-positive diagonal entry for variable " +
                    std::to_string(j),
                static_cast<int>(j));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
    const Eigen::VectorXd& ev = es.eigenvalues();
    if (ev.minCoeff() < -kPsdTolerance * scale) {
        throw std::invalid_argument("gfevd: sigma is not positive semidefinite (min eigenvalue " +
                                    std::to_string(ev.minCoeff()) + ")");
    }
    if (ev.minCoeff() >= 0.0) return sigma;
    Eigen::VectorXd clipped = ev.cwiseMax(0.0);
    return es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

const char* sigma_convention_name(SigmaConvention c) {
    return c == SigmaConvention::variance ? "variance" : "stddev";
}

Eigen::MatrixXd gfevd_raw(const MaCoefficients& psi, const Eigen::MatrixXd& sigma, int horizon,
                          SigmaConvention convention) {
    if (horizon < 1) throw std::invalid_argument("gfevd: horizon must be >= 1");
    if (psi.horizon() < horizon) {
        throw std::invalid_argument("gfevd: need at least H moving-average matrices");
    }
    const Eigen::MatrixXd sig = checked_sigma(sigma);
    const Eigen::Index N = sig.rows();

    Eigen::MatrixXd numerator = Eigen::MatrixXd::Zero(N, N);
    Eigen::VectorXd denominator = Eigen::VectorXd::Zero(N);
    for (int h = 0; h < horizon; ++h) {
        const Eigen::MatrixXd& psi_h = psi.psi[static_cast<std::size_t>(h)];
        const Eigen::MatrixXd a = psi_h * sig;          // a(i,j) = e_i' Psi_h Sigma e_j
        numerator += a.cwiseProduct(a);
        denominator += a.cwiseProduct(psi_h).rowwise().sum();  // diag(Psi_h Sigma Psi_h')
    }

    Eigen::MatrixXd raw(N, N);
    for (Eigen::Index i = 0; i < N; ++i) {
        if (!(denominator(i) > 0.0)) {
            throw DegenerateVarianceError(
                "gfevd: zero forecast-error variance for variable " + std::to_string(i),
                static_cast<int>(i));
        }
        for (Eigen::Index j = 0; j < N; ++j) {
            const double scale_j = convention == SigmaConvention::variance
                                       ? sig(j, j)
                                       : std::sqrt(sig(j, j));
            raw(i, j) = numerator(i, j) / (scale_j * denominator(i));
        }
    }
    return raw;
}

Eigen::MatrixXd normalize_rows(const Eigen::MatrixXd& raw) {
    Eigen::MatrixXd normalized(raw.rows(), raw.cols());
    for (Eigen::Index i = 0; i < raw.rows(); ++i) {
        const double row_sum = raw.row(i).sum();
        if (!(row_sum > 0.0)) {
            throw DegenerateVarianceError(
                "normalize_rows: zero row sum for variable " + std::to_string(i),
                static_cast<int>(i));
        }
        normalized.row(i) = raw.row(i) / row_sum;
    }
    return normalized;
}

FevdMatrix compute_fevd(const MaCoefficients& psi, const Eigen::MatrixXd& sigma, int horizon,
                        SigmaConvention convention) {
    FevdMatrix out;
    out.raw = gfevd_raw(psi, sigma, horizon, convention);
    out.normalized = normalize_rows(out.raw);
    out.horizon = horizon;
    out.convention = convention;
    return out;
}

}  // namespace spillover
