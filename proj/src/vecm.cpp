#include "coinecon/vecm.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "coinecon/errors.hpp"
#include "coinecon/regression.hpp"

namespace coinecon::vecm {

namespace {

Eigen::Index index_in(const std::vector<std::string>& names, const std::string& name) {
    const auto it = std::find(names.begin(), names.end(), name);
    return it == names.end() ? -1 : static_cast<Eigen::Index>(it - names.begin());
}

double ml_log_likelihood(const Eigen::MatrixXd& sigma, Eigen::Index t_eff) {
    const auto n = static_cast<double>(sigma.rows());
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success) {
        throw NumericalError("vecm: residual covariance is not positive definite");
    }
    const Eigen::MatrixXd l = llt.matrixL();
    const double log_det = 2.0 * l.diagonal().array().log().sum();
    return -0.5 * static_cast<double>(t_eff) *
           (n * std::log(2.0 * std::numbers::pi) + log_det + n);
}

}  // namespace

Eigen::MatrixXd VecmFit::pi_augmented() const {
    if (rank == 0) return Eigen::MatrixXd::Zero(n(), static_cast<Eigen::Index>(design.z1_names.size()));
    return alpha * beta.transpose();
}

Eigen::MatrixXd VecmFit::pi() const { return pi_augmented().leftCols(n()); }

VecmFit fit_at_rank(const johansen::EigenAnalysis& e, int rank) {
    const auto n = e.n();
    if (rank < 0 || rank > n) {
        throw InputError(fmt::format("vecm: rank {} outside [0, {}]", rank, n));
    }
    const auto& d = e.design;
    const auto t_eff = d.z0.rows();
    const auto n_aug = d.z1.cols();

    VecmFit fit;
    fit.rank = rank;
    fit.lag_order = d.lag_order;
    fit.deterministic = d.deterministic;
    fit.eigenvalues = e.eigenvalues;
    fit.s11 = e.s11;
    fit.s00 = e.s00;
    fit.design = d;

    Eigen::MatrixXd level_part = Eigen::MatrixXd::Zero(t_eff, n);
    if (rank > 0) {
        fit.beta = e.eigenvectors.leftCols(rank);
        const Eigen::MatrixXd bsb = fit.beta.transpose() * e.s11 * fit.beta;
        Eigen::LLT<Eigen::MatrixXd> llt(bsb);
        if (llt.info() != Eigen::Success) throw NumericalError("vecm: beta' S11 beta is singular");
        fit.alpha = llt.solve((e.s01 * fit.beta).transpose()).transpose();
        level_part = d.z1 * fit.beta * fit.alpha.transpose();
    } else {
        fit.beta.resize(n_aug, 0);
        fit.alpha.resize(n, 0);
    }

    const Eigen::MatrixXd target = d.z0 - level_part;
    Eigen::MatrixXd short_part = Eigen::MatrixXd::Zero(t_eff, n);
    const auto lagged = static_cast<Eigen::Index>(d.lag_order - 1) * n;
    const auto n_det = d.z2.cols() - lagged;
    if (d.z2.cols() > 0) {
        const auto ols = regression::ols(d.z2, target);
        for (int i = 0; i + 1 < d.lag_order; ++i) {
            fit.gamma.emplace_back(ols.coefficients.middleRows(i * n, n).transpose());
        }
        fit.unrestricted_det = ols.coefficients.bottomRows(n_det).transpose();
        short_part = d.z2 * ols.coefficients;
    } else {
        fit.unrestricted_det.resize(n, 0);
    }

    fit.fitted = level_part + short_part;
    fit.residuals = d.z0 - fit.fitted;
    fit.residual_covariance = fit.residuals.transpose() * fit.residuals / static_cast<double>(t_eff);
    fit.residual_covariance = 0.5 * (fit.residual_covariance + fit.residual_covariance.transpose());
    fit.log_likelihood = ml_log_likelihood(fit.residual_covariance, t_eff);
    return fit;
}

VecmFit estimate_vecm(const series::Panel& p, int k, int rank, DeterministicCase c) {
    const auto n = static_cast<int>(p.cols());
    if (rank < 1 || rank > n - 1) {
        throw InputError(fmt::format(
            "estimate_vecm: rank {} outside [1, {}]; use reduce_to_var for the boundaries", rank, n - 1));
    }
    auto fit = fit_at_rank(johansen::concentrate(p, k, c), rank);
    return normalize_long_run(fit, fit.variables().front());
}

VecmFit reduce_to_var(const series::Panel& p, int k, VarBoundary boundary, DeterministicCase c) {
    const auto e = johansen::concentrate(p, k, c);
    return fit_at_rank(e, boundary == VarBoundary::rank_zero ? 0 : static_cast<int>(e.n()));
}

VecmFit normalize_long_run(const VecmFit& fit, const std::string& variable) {
    const auto idx = index_in(fit.variables(), variable);
    if (idx < 0) throw InputError(fmt::format("normalize_long_run: unknown variable '{}'", variable));
    VecmFit out = fit;
    for (Eigen::Index j = 0; j < out.beta.cols(); ++j) {
        const double pivot = out.beta(idx, j);
        const double scale = out.beta.col(j).norm();
        if (!(std::abs(pivot) > 1e-10 * scale)) {
            throw NumericalError(fmt::format(
                "normalize_long_run: zero pivot coefficient on '{}' in relation {}", variable, j + 1));
        }
        out.beta.col(j) /= pivot;
        out.alpha.col(j) *= pivot;
    }
    out.normalized_on = variable;
    return out;
}

double eigenvalue_log_likelihood(const VecmFit& fit) {
    const auto n = static_cast<double>(fit.n());
    const auto t = static_cast<double>(fit.effective_T());
    Eigen::LLT<Eigen::MatrixXd> llt(fit.s00);
    if (llt.info() != Eigen::Success) throw NumericalError("vecm: S00 is not positive definite");
    const Eigen::MatrixXd l = llt.matrixL();
    double value = 2.0 * l.diagonal().array().log().sum();
    for (int i = 0; i < fit.rank; ++i) value += std::log1p(-fit.eigenvalues(i));
    return -0.5 * t * (n * std::log(2.0 * std::numbers::pi) + n + value);
}

std::string to_string(Stars stars) {
    switch (stars) {
    case Stars::none: return "";
    case Stars::one: return "*";
    case Stars::two: return "**";
    case Stars::three: break;
    }
    return "***";
}

Stars stars_for(double t_stat) noexcept {
    const double a = std::abs(t_stat);
    if (a >= 2.576) return Stars::three;
    if (a >= 1.960) return Stars::two;
    if (a >= 1.645) return Stars::one;
    return Stars::none;
}

CoefficientCell make_cell(double value, double std_error) {
    CoefficientCell cell;
    cell.value = value;
    cell.std_error = std_error;
    if (std_error > 0.0 && std::isfinite(std_error)) {
        cell.t_stat = value / std_error;
        cell.stars = stars_for(cell.t_stat);
    }
    cell.display = cell.stars == Stars::none ? Display::dash : Display::shown;
    return cell;
}

const std::vector<NamedCell>& EffectTables::short_run_for(const std::string& equation) const {
    const auto idx = index_in(variables, equation);
    if (idx < 0) throw InputError(fmt::format("no equation for '{}'", equation));
    return short_run[static_cast<std::size_t>(idx)];
}

EffectTables inference(const VecmFit& fit) {
    const auto& d = fit.design;
    const auto n = fit.n();
    const auto t_eff = fit.effective_T();
    const auto r = static_cast<Eigen::Index>(fit.rank);
    const auto m = d.z2.cols();

    EffectTables out;
    out.variables = d.variables;
    out.normalized_on = fit.normalized_on;
    out.rank = fit.rank;
    out.lag_order = fit.lag_order;
    out.deterministic = fit.deterministic;
    out.short_run.resize(static_cast<std::size_t>(n));
    out.adjustment.resize(static_cast<std::size_t>(n));

    const auto p = r + m;
    if (p == 0) return out;
    if (t_eff <= p) throw NumericalError("vecm inference: no residual degrees of freedom");

    Eigen::MatrixXd x(t_eff, p);
    if (r > 0) x.leftCols(r) = d.z1 * fit.beta;
    if (m > 0) x.rightCols(m) = d.z2;
    regression::OlsFit ols;
    try {
        ols = regression::ols(x, d.z0);
    } catch (const NumericalError&) {
        throw NumericalError("vecm inference: non-invertible second-stage moment matrix");
    }
    const Eigen::MatrixXd sigma_df =
        ols.residuals.transpose() * ols.residuals / static_cast<double>(t_eff - p);

    for (Eigen::Index eq = 0; eq < n; ++eq) {
        auto& sr = out.short_run[static_cast<std::size_t>(eq)];
        auto& adj = out.adjustment[static_cast<std::size_t>(eq)];
        for (Eigen::Index j = 0; j < r; ++j) {
            const double se = std::sqrt(sigma_df(eq, eq) * ols.xtx_inverse(j, j));
            adj.push_back({fmt::format("ce{}", j + 1), make_cell(ols.coefficients(j, eq), se)});
        }
        for (Eigen::Index j = 0; j < m; ++j) {
            const double se = std::sqrt(sigma_df(eq, eq) * ols.xtx_inverse(r + j, r + j));
            sr.push_back({d.z2_names[static_cast<std::size_t>(j)],
                          make_cell(ols.coefficients(r + j, eq), se)});
        }
    }

    // Long-run table only for reduced rank with a price-normalised first relation.
    if (r == 0 || r >= n || fit.normalized_on.empty()) return out;

    Eigen::LLT<Eigen::MatrixXd> sigma_llt(fit.residual_covariance);
    if (sigma_llt.info() != Eigen::Success) {
        throw NumericalError("vecm inference: residual covariance is not positive definite");
    }
    const Eigen::MatrixXd asa = fit.alpha.transpose() * sigma_llt.solve(fit.alpha);
    const Eigen::MatrixXd asa_inv = asa.inverse();
    const double omega = asa_inv(0, 0);

    const auto n_aug = static_cast<Eigen::Index>(d.z1_names.size());
    const auto pivot = index_in(d.variables, fit.normalized_on);
    const Eigen::VectorXd b1 = fit.beta.col(0);
    Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(n_aug, n_aug);
    proj.col(pivot) -= b1;
    const Eigen::MatrixXd s11_inv =
        (static_cast<double>(t_eff) * fit.s11).ldlt().solve(Eigen::MatrixXd::Identity(n_aug, n_aug));
    const Eigen::MatrixXd cov = omega * proj * s11_inv * proj.transpose();

    for (Eigen::Index i = 0; i < n_aug; ++i) {
        if (i == pivot) continue;
        const auto& name = d.z1_names[static_cast<std::size_t>(i)];
        auto cell = make_cell(-b1(i), std::sqrt(std::max(cov(i, i), 0.0)));
        if (name == "constant") {
            out.long_run_constant = cell;
        } else {
            out.long_run.push_back({name, cell});
        }
    }

    // Unrestricted constant: project mu onto alpha to recover the part inside the relation.
    const auto c_idx = index_in(d.z2_names, "constant");
    if (c_idx >= 0 && !out.long_run_constant) {
        const Eigen::VectorXd mu = ols.coefficients.row(r + c_idx).transpose();
        const Eigen::MatrixXd proj_alpha =
            (fit.alpha.transpose() * fit.alpha).ldlt().solve(fit.alpha.transpose());
        const Eigen::VectorXd a = proj_alpha.row(0).transpose();
        const double beta0 = a.dot(mu);
        const double var = a.dot(sigma_df * a) * ols.xtx_inverse(r + c_idx, r + c_idx);
        out.long_run_constant = make_cell(-beta0, std::sqrt(std::max(var, 0.0)));
    }
    return out;
}

}  // namespace coinecon::vecm
