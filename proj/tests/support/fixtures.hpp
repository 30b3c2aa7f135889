#pragma once

// Shared data generators and independent reference implementations for the
// test binaries. Nothing here calls into the estimation code it is used to check.

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "coinecon/series_store.hpp"

namespace fixtures {

using coinecon::series::Date;

inline std::vector<Date> daily_dates(Eigen::Index n, Date start = Date{std::chrono::year{2010} / 1 / 1}) {
    std::vector<Date> out;
    out.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) out.push_back(start + std::chrono::days{i});
    return out;
}

inline coinecon::series::Panel make_panel(const Eigen::MatrixXd& data, std::vector<std::string> names = {}) {
    if (names.empty()) {
        for (Eigen::Index j = 0; j < data.cols(); ++j) names.push_back("x" + std::to_string(j + 1));
    }
    return {std::move(names), daily_dates(data.rows()), data};
}

inline Eigen::MatrixXd gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng, double sd = 1.0) {
    std::normal_distribution<double> z(0.0, sd);
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = z(rng);
    return m;
}

inline Eigen::VectorXd random_walk(Eigen::Index T, std::mt19937_64& rng) {
    Eigen::VectorXd e = gaussian(T, 1, rng);
    Eigen::VectorXd y(T);
    double acc = 0.0;
    for (Eigen::Index t = 0; t < T; ++t) y(t) = acc += e(t);
    return y;
}

inline Eigen::MatrixXd independent_walks(Eigen::Index T, Eigen::Index n, std::mt19937_64& rng) {
    Eigen::MatrixXd z(T, n);
    for (Eigen::Index j = 0; j < n; ++j) z.col(j) = random_walk(T, rng);
    return z;
}

/// Z_t = Z_{t-1} + Pi Z_{t-1} + Gamma1 dZ_{t-1} + mu + e_t with N(0, I) errors, after a burn-in.
inline Eigen::MatrixXd simulate_vecm(Eigen::Index T, const Eigen::MatrixXd& pi, std::mt19937_64& rng,
                                     const Eigen::MatrixXd& gamma1 = {}, const Eigen::VectorXd& mu = {},
                                     Eigen::Index burn = 50) {
    const Eigen::Index n = pi.rows();
    const Eigen::Index total = T + burn;
    const Eigen::MatrixXd e = gaussian(total, n, rng);
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(total, n);
    Eigen::VectorXd prev_dz = Eigen::VectorXd::Zero(n);
    for (Eigen::Index t = 1; t < total; ++t) {
        Eigen::VectorXd dz = pi * z.row(t - 1).transpose() + e.row(t).transpose();
        if (gamma1.size() > 0) dz += gamma1 * prev_dz;
        if (mu.size() > 0) dz += mu;
        z.row(t) = z.row(t - 1) + dz.transpose();
        prev_dz = dz;
    }
    return z.bottomRows(T);
}

/// The bivariate system dZ = alpha beta' Z_{t-1} + e with beta = (1, -2)', alpha = (-0.5, 0.1)'.
inline Eigen::Vector2d true_alpha() { return {-0.5, 0.1}; }
inline Eigen::Vector2d true_beta() { return {1.0, -2.0}; }
inline Eigen::MatrixXd bivariate_cointegrated(Eigen::Index T, std::mt19937_64& rng) {
    return simulate_vecm(T, true_alpha() * true_beta().transpose(), rng);
}

/// Least squares via the normal equations, (X'X)^-1 X'Y.
inline Eigen::MatrixXd naive_ols(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    return (x.transpose() * x).inverse() * (x.transpose() * y);
}

inline Eigen::MatrixXd naive_residuals(const Eigen::MatrixXd& y, const Eigen::MatrixXd& x) {
    if (x.cols() == 0) return y;
    return y - x * naive_ols(x, y);
}

/// Dickey-Fuller t on rho with a constant, no augmentation, by explicit formulas.
inline double naive_df_constant(const std::vector<double>& y) {
    const auto T = static_cast<Eigen::Index>(y.size()) - 1;
    Eigen::MatrixXd x(T, 2);
    Eigen::VectorXd dy(T);
    for (Eigen::Index t = 0; t < T; ++t) {
        x(t, 0) = 1.0;
        x(t, 1) = y[static_cast<std::size_t>(t)];
        dy(t) = y[static_cast<std::size_t>(t + 1)] - y[static_cast<std::size_t>(t)];
    }
    const Eigen::MatrixXd xtx_inv = (x.transpose() * x).inverse();
    const Eigen::VectorXd b = xtx_inv * x.transpose() * dy;
    const Eigen::VectorXd u = dy - x * b;
    const double s2 = u.squaredNorm() / static_cast<double>(T - 2);
    return b(1) / std::sqrt(s2 * xtx_inv(1, 1));
}

/// Johansen eigenvalues from the nonsymmetric matrix S11^-1 S10 S00^-1 S01,
/// with k = 1 and an unrestricted constant (residualise on a column of ones).
struct NaiveJohansen {
    std::vector<double> eigenvalues;  // descending
    Eigen::Index T = 0;
};

inline NaiveJohansen naive_johansen(const Eigen::MatrixXd& levels, int k, bool unrestricted_constant,
                                    bool restricted_constant) {
    const Eigen::Index n = levels.cols();
    const Eigen::Index T = levels.rows() - k;
    Eigen::MatrixXd z0(T, n), z1(T, n + (restricted_constant ? 1 : 0));
    Eigen::MatrixXd z2(T, n * (k - 1) + (unrestricted_constant ? 1 : 0));
    for (Eigen::Index t = 0; t < T; ++t) {
        const Eigen::Index row = t + k;
        z0.row(t) = levels.row(row) - levels.row(row - 1);
        z1.row(t).head(n) = levels.row(row - 1);
        if (restricted_constant) z1(t, n) = 1.0;
        for (int i = 1; i < k; ++i) {
            z2.row(t).segment((i - 1) * n, n) = levels.row(row - i) - levels.row(row - i - 1);
        }
        if (unrestricted_constant) z2(t, z2.cols() - 1) = 1.0;
    }
    const Eigen::MatrixXd r0 = naive_residuals(z0, z2);
    const Eigen::MatrixXd r1 = naive_residuals(z1, z2);
    const double dT = static_cast<double>(T);
    const Eigen::MatrixXd s00 = r0.transpose() * r0 / dT;
    const Eigen::MatrixXd s01 = r0.transpose() * r1 / dT;
    const Eigen::MatrixXd s11 = r1.transpose() * r1 / dT;
    const Eigen::MatrixXd m = s11.inverse() * s01.transpose() * s00.inverse() * s01;
    Eigen::EigenSolver<Eigen::MatrixXd> es(m);
    std::vector<double> ev;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) ev.push_back(es.eigenvalues()(i).real());
    std::sort(ev.rbegin(), ev.rend());
    ev.resize(static_cast<std::size_t>(n));
    return {ev, T};
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const auto m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace fixtures
