#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "spillover/measures.hpp"
#include "spillover/synth.hpp"
#include "spillover/var.hpp"

namespace test_util {

using spillover::Date;
using spillover::MeasurePanel;
using spillover::SynthSpec;
using spillover::VarModel;

// Stable VAR with random coefficients; rejection on the companion
// spectral radius keeps only comfortably stationary draws.
inline VarModel random_stable_model(std::mt19937_64& rng, int n, int p,
                                    double max_radius = 0.95) {
    std::normal_distribution<double> normal(0.0, 0.25 / std::sqrt(static_cast<double>(n * p)));
    for (;;) {
        std::vector<Eigen::MatrixXd> phi;
        for (int j = 0; j < p; ++j) {
            Eigen::MatrixXd m(n, n);
            for (int r = 0; r < n; ++r) {
                for (int c = 0; c < n; ++c) m(r, c) = normal(rng);
            }
            // Put some persistence on the first lag's diagonal.
            if (j == 0) m.diagonal().array() += 0.3;
            phi.push_back(std::move(m));
        }
        Eigen::MatrixXd a(n, n);
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) a(r, c) = normal(rng);
        }
        Eigen::MatrixXd sigma =
            a * a.transpose() + 0.5 * Eigen::MatrixXd::Identity(n, n);
        VarModel model = spillover::known_var(std::move(phi), std::move(sigma));
        if (spillover::stability_check(model) < max_radius) return model;
    }
}

// Synthetic measure panel: two independent stable simulations for the
// semivariances (shifted positive), rv as their sum, sequential dates.
inline MeasurePanel make_synth_panel(int n_assets, int t_obs, std::uint64_t seed,
                                     bool mirror = false) {
    SynthSpec spec;
    spec.n_assets = n_assets;
    spec.p = 1;
    Eigen::MatrixXd phi = Eigen::MatrixXd::Constant(n_assets, n_assets, 0.05);
    phi.diagonal().setConstant(0.25);
    spec.phi = {phi};
    spec.sigma = Eigen::MatrixXd::Constant(n_assets, n_assets, 0.01);
    spec.sigma.diagonal().setConstant(0.05);
    spec.t_obs = t_obs;

    spec.seed = spillover::derive_seed(seed, 0);
    Eigen::MatrixXd rsm = spillover::simulate_var(spec).array() + 1.0;
    Eigen::MatrixXd rsp;
    if (mirror) {
        rsp = rsm;
    } else {
        spec.seed = spillover::derive_seed(seed, 1);
        rsp = spillover::simulate_var(spec).array() + 1.0;
    }
    Eigen::MatrixXd rv = rsm + rsp;

    std::vector<Date> dates;
    Date d = Date::from_ymd(2000, 1, 1);
    for (int t = 0; t < t_obs; ++t) {
        dates.push_back(d);
        d = d.next();
    }
    std::vector<std::string> assets;
    for (int a = 0; a < n_assets; ++a) assets.push_back("a" + std::to_string(a + 1));
    return MeasurePanel(std::move(assets), std::move(dates), std::move(rv), std::move(rsm),
                        std::move(rsp));
}

// Paper-table fixture: entries in percent, rows receive, columns transmit.
inline Eigen::MatrixXd table2_percent() {
    Eigen::MatrixXd m(3, 3);
    m << 49.9025, 21.9881, 28.1094,  //
        25.3731, 44.7523, 29.8746,   //
        25.1333, 21.3211, 53.5456;
    return m;
}

}  // namespace test_util
