#include "coinecon/diagnostics.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "coinecon/errors.hpp"
#include "coinecon/regression.hpp"

namespace coinecon::diagnostics {

namespace {

double chi2_survival(double x, int df) {
    if (!(x > 0.0)) return 1.0;
    const boost::math::chi_squared dist(static_cast<double>(df));
    return std::clamp(boost::math::cdf(boost::math::complement(dist, x)), 0.0, 1.0);
}

Eigen::MatrixXd second_stage_regressors(const vecm::VecmFit& fit) {
    const auto& d = fit.design;
    const auto r = static_cast<Eigen::Index>(fit.rank);
    Eigen::MatrixXd x(d.z0.rows(), r + d.z2.cols());
    if (r > 0) x.leftCols(r) = d.z1 * fit.beta;
    if (d.z2.cols() > 0) x.rightCols(d.z2.cols()) = d.z2;
    return x;
}

}  // namespace

std::vector<LmEntry> lm_autocorrelation(const Eigen::MatrixXd& residuals,
                                        const Eigen::MatrixXd& regressors, int max_lag) {
    std::vector<LmEntry> out;
    if (max_lag <= 0) return out;
    const auto t_eff = residuals.rows();
    const auto n = residuals.cols();
    if (t_eff <= n * max_lag + 10) {
        throw InputError(fmt::format("lm_autocorrelation: T = {} too short for n = {}, max_lag = {}",
                                     t_eff, n, max_lag));
    }
    const double t = static_cast<double>(t_eff);
    const Eigen::MatrixXd sigma_u = residuals.transpose() * residuals / t;
    Eigen::LLT<Eigen::MatrixXd> llt(sigma_u);
    if (llt.info() != Eigen::Success) {
        throw NumericalError("lm_autocorrelation: residual covariance is singular");
    }
    for (int h = 1; h <= max_lag; ++h) {
        Eigen::MatrixXd x(t_eff, regressors.cols() + n);
        x << regressors, regression::lag_with_zeros(residuals, h);
        regression::OlsFit aux;
        try {
            aux = regression::ols(x, residuals);
        } catch (const NumericalError&) {
            throw NumericalError(fmt::format("lm_autocorrelation: singular auxiliary regression at h = {}", h));
        }
        const Eigen::MatrixXd sigma_e = aux.residuals.transpose() * aux.residuals / t;
        const double stat = t * (static_cast<double>(n) - llt.solve(sigma_e).trace());
        LmEntry e;
        e.lag = h;
        e.statistic = stat;
        e.df = static_cast<int>(n * n);
        e.p_value = chi2_survival(stat, e.df);
        out.push_back(e);
    }
    return out;
}

std::vector<LmEntry> lm_autocorrelation(const vecm::VecmFit& fit, int max_lag) {
    return lm_autocorrelation(fit.residuals, second_stage_regressors(fit), max_lag);
}

JarqueBeraEntry jarque_bera(const Eigen::VectorXd& x, const std::string& name) {
    const auto t_eff = x.size();
    if (t_eff < 20) {
        throw InputError(fmt::format("jarque_bera: {} observations, need at least 20", t_eff));
    }
    const double t = static_cast<double>(t_eff);
    const Eigen::ArrayXd centered = x.array() - x.mean();
    const double m2 = centered.square().sum() / t;
    if (!(m2 > 0.0)) throw NumericalError(fmt::format("jarque_bera: zero residual variance{}",
                                                       name.empty() ? "" : " in " + name));
    const double m3 = centered.cube().sum() / t;
    const double m4 = centered.square().square().sum() / t;
    JarqueBeraEntry e;
    e.equation = name;
    e.skewness = m3 / std::pow(m2, 1.5);
    e.kurtosis = m4 / (m2 * m2);
    e.statistic = t / 6.0 * (e.skewness * e.skewness + 0.25 * (e.kurtosis - 3.0) * (e.kurtosis - 3.0));
    e.p_value = std::exp(-0.5 * e.statistic);  // chi-square(2) survival
    return e;
}

std::vector<JarqueBeraEntry> jarque_bera(const vecm::VecmFit& fit) {
    std::vector<JarqueBeraEntry> out;
    for (Eigen::Index i = 0; i < fit.residuals.cols(); ++i) {
        out.push_back(jarque_bera(fit.residuals.col(i), fit.variables()[static_cast<std::size_t>(i)]));
    }
    return out;
}

std::vector<Eigen::MatrixXd> level_var_coefficients(const vecm::VecmFit& fit) {
    const auto n = fit.n();
    const int k = fit.lag_order;
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    std::vector<Eigen::MatrixXd> a(static_cast<std::size_t>(k));
    auto gamma = [&](int i) -> const Eigen::MatrixXd& { return fit.gamma[static_cast<std::size_t>(i - 1)]; };
    a[0] = id + fit.pi();
    if (k > 1) a[0] += gamma(1);
    for (int i = 2; i < k; ++i) a[static_cast<std::size_t>(i - 1)] = gamma(i) - gamma(i - 1);
    if (k > 1) a[static_cast<std::size_t>(k - 1)] = -gamma(k - 1);
    return a;
}

std::vector<double> companion_moduli(const std::vector<Eigen::MatrixXd>& a) {
    if (a.empty()) return {};
    const auto n = a.front().rows();
    const auto k = static_cast<Eigen::Index>(a.size());
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n * k, n * k);
    for (Eigen::Index i = 0; i < k; ++i) c.block(0, i * n, n, n) = a[static_cast<std::size_t>(i)];
    if (k > 1) c.bottomLeftCorner(n * (k - 1), n * (k - 1)).setIdentity();
    Eigen::EigenSolver<Eigen::MatrixXd> solver(c, false);
    if (solver.info() != Eigen::Success) throw NumericalError("stability: eigenvalue solver failed");
    std::vector<double> moduli;
    for (Eigen::Index i = 0; i < c.rows(); ++i) moduli.push_back(std::abs(solver.eigenvalues()(i)));
    std::sort(moduli.begin(), moduli.end(), std::greater<>());
    return moduli;
}

StabilityResult stability_verdict(std::vector<double> moduli, int unit_expected) {
    StabilityResult out;
    std::sort(moduli.begin(), moduli.end(), std::greater<>());
    out.moduli = std::move(moduli);
    out.unit_moduli_expected = unit_expected;
    bool others_inside = true;
    for (double m : out.moduli) {
        if (std::abs(m - 1.0) <= kUnitModulusTolerance) {
            ++out.unit_moduli_found;
        } else if (m >= 1.0) {
            others_inside = false;
        }
    }
    out.stable = others_inside && out.unit_moduli_found == unit_expected;
    return out;
}

StabilityResult stability(const vecm::VecmFit& fit) {
    return stability_verdict(companion_moduli(level_var_coefficients(fit)),
                             static_cast<int>(fit.n()) - fit.rank);
}

DiagnosticReport run_diagnostics(const vecm::VecmFit& fit, int max_lag) {
    DiagnosticReport report;
    report.lm = lm_autocorrelation(fit, max_lag);
    report.jarque_bera = jarque_bera(fit);
    report.stability = stability(fit);
    report.verdicts["lm"] = std::all_of(report.lm.begin(), report.lm.end(),
                                        [](const LmEntry& e) { return e.p_value > 0.05; });
    report.verdicts["jarque_bera"] =
        std::all_of(report.jarque_bera.begin(), report.jarque_bera.end(),
                    [](const JarqueBeraEntry& e) { return e.p_value > 0.05; });
    report.verdicts["stability"] = report.stability.stable;
    return report;
}

}  // namespace coinecon::diagnostics
