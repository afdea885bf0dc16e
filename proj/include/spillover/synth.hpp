#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "spillover/var.hpp"

namespace spillover {

// Deterministic Gaussian stream: std::mt19937_64 (bit-exact across
// conforming implementations) feeding the basic Box-Muller transform.
// Uniforms are (x >> 11) * 2^-53, shifted into (0, 1] for the log
// argument. Two uniforms yield two normals; the first of each pair is
// returned first. Reference outputs live in the test suite.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

    double next();

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Stateless splitmix64 mix of (seed, index), used to derive independent
// per-path seeds so parallel simulation is worker-count independent.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// A known VAR process to simulate from. Only stable processes
// (companion spectral radius < 1) with positive-definite sigma are
// accepted.
struct SynthSpec {
    int n_assets = 0;
    int p = 1;
    std::vector<Eigen::MatrixXd> phi;
    Eigen::MatrixXd sigma;
    int t_obs = 0;
    std::uint64_t seed = 0;
};

// Simulates T observations of the VAR with N(0, sigma) shocks after a
// discarded burn-in of 1000 steps from a zero initial state. Identical
// specs produce identical matrices.
Eigen::MatrixXd simulate_var(const SynthSpec& spec);

// Independent oracle for the moving-average coefficients: column k of
// Psi_h is the state after propagating the unit impulse e_k through the
// VAR recursion for h steps with zero noise and zero intercept.
MaCoefficients impulse_psi(const VarModel& model, int horizon);

struct McForecastErrors {
    // Monte Carlo estimate of the H-step forecast-error covariance,
    // converging to sum_{h=0}^{H-1} Psi_h Sigma Psi_h'. The diagonal is
    // the denominator of the generalized decomposition.
    Eigen::MatrixXd covariance;
    // Standard error of each diagonal entry (Gaussian: var^2 * 2/n).
    Eigen::VectorXd variance_se;
    int n_paths = 0;
};

// Simulates n_paths independent H-step-ahead forecast errors (the VAR
// recursion run H steps from zero state with fresh shocks) and
// accumulates their second moments. Paths use derive_seed(seed, k) and
// are reduced in fixed chunks, so the result is independent of the
// worker count.
McForecastErrors mc_forecast_error_shares(const VarModel& model, int horizon, int n_paths,
                                          std::uint64_t seed, int workers = 1);

// Convenience: a VarModel with the given dynamics and zero intercept
// (for oracle and simulation tests on known parameters).
VarModel known_var(std::vector<Eigen::MatrixXd> phi, Eigen::MatrixXd sigma);

}  // namespace spillover
