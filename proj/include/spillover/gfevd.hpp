#pragma once

#include <Eigen/Dense>

#include "spillover/var.hpp"

namespace spillover {

// Scaling of shock j in the generalized decomposition. The
// Pesaran-Shin construction divides by the j-th diagonal of the
// residual covariance (a variance); `stddev` is the literal
// standard-deviation reading, kept behind a flag.
enum class SigmaConvention { variance, stddev };

const char* sigma_convention_name(SigmaConvention c);

// H-step generalized forecast-error variance decomposition,
// raw and row-normalized.
struct FevdMatrix {
    Eigen::MatrixXd raw;
    Eigen::MatrixXd normalized;
    int horizon = 0;
    SigmaConvention convention = SigmaConvention::variance;
};

// raw_ij = sigma_jj^{-1} sum_h (e_i' Psi_h Sigma e_j)^2
//          / sum_h (e_i' Psi_h Sigma Psi_h' e_i),  h = 0..H-1.
// Sigma must be symmetric PSD with a strictly positive diagonal;
// eigenvalues below -1e-10 are an error, ones in [-1e-10, 0) are
// clipped to zero. A zero denominator raises DegenerateVarianceError.
Eigen::MatrixXd gfevd_raw(const MaCoefficients& psi, const Eigen::MatrixXd& sigma, int horizon,
                          SigmaConvention convention = SigmaConvention::variance);

// Divides each row by its sum so rows sum to one. Errors on a zero row.
Eigen::MatrixXd normalize_rows(const Eigen::MatrixXd& raw);

FevdMatrix compute_fevd(const MaCoefficients& psi, const Eigen::MatrixXd& sigma, int horizon,
                        SigmaConvention convention = SigmaConvention::variance);

}  // namespace spillover
