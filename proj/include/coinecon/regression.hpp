#pragma once

#include <Eigen/Dense>

namespace coinecon::regression {

/// Multivariate least squares Y = X B + U.
struct OlsFit {
    Eigen::MatrixXd coefficients;  ///< k x m
    Eigen::MatrixXd residuals;     ///< T x m
    Eigen::MatrixXd xtx_inverse;   ///< k x k, (X'X)^-1
};

/// Relative tolerance on the column-normalised QR diagonal below which the
/// regressor matrix is declared rank deficient.
inline constexpr double kRankTolerance = 1e-10;

/// Fits by column-pivoted QR on unit-norm columns.
/// @throws NumericalError when X has fewer rows than columns or is rank deficient.
[[nodiscard]] OlsFit ols(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

/// Residuals of Y after projecting on X; X may have zero columns.
[[nodiscard]] Eigen::MatrixXd residualize(const Eigen::MatrixXd& y, const Eigen::MatrixXd& x);

/// Lagged copy: row t holds x(t - lag), rows before `lag` are zero.
[[nodiscard]] Eigen::MatrixXd lag_with_zeros(const Eigen::MatrixXd& x, Eigen::Index lag);

}  // namespace coinecon::regression
