#include "coinecon/regression.hpp"

#include <fmt/format.h>

#include "coinecon/errors.hpp"

namespace coinecon::regression {

OlsFit ols(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    if (x.rows() != y.rows()) throw NumericalError("ols: row count mismatch");
    const auto k = x.cols();
    OlsFit fit;
    if (k == 0) {
        fit.coefficients = Eigen::MatrixXd::Zero(0, y.cols());
        fit.residuals = y;
        fit.xtx_inverse = Eigen::MatrixXd::Zero(0, 0);
        return fit;
    }
    if (x.rows() < k) {
        throw NumericalError(fmt::format("ols: {} observations for {} regressors", x.rows(), k));
    }
    Eigen::VectorXd scale = x.colwise().norm();
    for (Eigen::Index j = 0; j < k; ++j) {
        if (!(scale(j) > 0.0)) throw NumericalError("ols: singular regressor matrix (zero column)");
    }
    const Eigen::MatrixXd xs = x * scale.cwiseInverse().asDiagonal();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(xs);
    qr.setThreshold(kRankTolerance);
    if (qr.rank() < k) {
        throw NumericalError(
            fmt::format("ols: singular regressor matrix (rank {} < {})", qr.rank(), k));
    }
    Eigen::MatrixXd bs = qr.solve(y);
    fit.coefficients = scale.cwiseInverse().asDiagonal() * bs;
    fit.residuals = y - x * fit.coefficients;

    // (X'X)^-1 = D^-1 P R^-1 R^-T P' D^-1 for X D^-1 P = Q R.
    const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
    Eigen::MatrixXd rinv = r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    Eigen::MatrixXd inner = rinv * rinv.transpose();
    Eigen::MatrixXd permuted = qr.colsPermutation() * inner * qr.colsPermutation().transpose();
    fit.xtx_inverse = scale.cwiseInverse().asDiagonal() * permuted * scale.cwiseInverse().asDiagonal();
    return fit;
}

Eigen::MatrixXd residualize(const Eigen::MatrixXd& y, const Eigen::MatrixXd& x) {
    if (x.cols() == 0) return y;
    return ols(x, y).residuals;
}

Eigen::MatrixXd lag_with_zeros(const Eigen::MatrixXd& x, Eigen::Index lag) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(x.rows(), x.cols());
    if (lag < x.rows()) out.bottomRows(x.rows() - lag) = x.topRows(x.rows() - lag);
    return out;
}

}  // namespace coinecon::regression
