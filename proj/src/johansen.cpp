#include "coinecon/johansen.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "coinecon/critical_values.hpp"
#include "coinecon/errors.hpp"
#include "coinecon/regression.hpp"

namespace coinecon::johansen {

namespace {

std::string lag_name(int lag, const std::string& variable) {
    return lag == 1 ? "LD." + variable : fmt::format("L{}D.{}", lag, variable);
}

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

Design build_design(const series::Panel& p, int k, DeterministicCase c) {
    if (k < 1) throw InputError("johansen: lag order k must be at least 1");
    const auto total = p.rows();
    const auto n = p.cols();
    if (total <= n * k + n + 10) {
        throw InputError(fmt::format("johansen: T = {} too small for n = {}, k = {} (need > {})",
                                     total, n, k, n * k + n + 10));
    }
    const auto& z = p.data();
    const Eigen::Index t_eff = total - k;
    const bool restricted_const = c == DeterministicCase::restricted_constant;
    const bool restricted_trend = c == DeterministicCase::restricted_trend;
    const bool unrestricted_const = c == DeterministicCase::unrestricted_constant ||
                                    c == DeterministicCase::restricted_trend ||
                                    c == DeterministicCase::unrestricted_trend;
    const bool unrestricted_trend = c == DeterministicCase::unrestricted_trend;

    Design d;
    d.variables = p.variables();
    d.lag_order = k;
    d.deterministic = c;
    d.z1_names = d.variables;
    if (restricted_const) d.z1_names.emplace_back("constant");
    if (restricted_trend) d.z1_names.emplace_back("trend");
    for (int lag = 1; lag < k; ++lag) {
        for (const auto& v : d.variables) d.z2_names.push_back(lag_name(lag, v));
    }
    if (unrestricted_const) d.z2_names.emplace_back("constant");
    if (unrestricted_trend) d.z2_names.emplace_back("trend");

    d.z0.resize(t_eff, n);
    d.z1.resize(t_eff, static_cast<Eigen::Index>(d.z1_names.size()));
    d.z2.resize(t_eff, static_cast<Eigen::Index>(d.z2_names.size()));
    for (Eigen::Index row = 0; row < t_eff; ++row) {
        const Eigen::Index t = row + k;
        const double trend = static_cast<double>(t);
        d.dates.push_back(p.index()[static_cast<std::size_t>(t)]);
        d.z0.row(row) = z.row(t) - z.row(t - 1);
        d.z1.row(row).head(n) = z.row(t - 1);
        if (restricted_const) d.z1(row, n) = 1.0;
        if (restricted_trend) d.z1(row, n) = trend;
        Eigen::Index col = 0;
        for (int lag = 1; lag < k; ++lag) {
            d.z2.row(row).segment(col, n) = z.row(t - lag) - z.row(t - lag - 1);
            col += n;
        }
        if (unrestricted_const) d.z2(row, col++) = 1.0;
        if (unrestricted_trend) d.z2(row, col++) = trend;
    }
    return d;
}

EigenAnalysis concentrate(const series::Panel& p, int k, DeterministicCase c) {
    return concentrate(build_design(p, k, c));
}

EigenAnalysis concentrate(const Design& design) {
    EigenAnalysis e;
    e.design = design;
    const auto t_eff = design.z0.rows();
    const auto n = design.z0.cols();
    const double t = static_cast<double>(t_eff);
    e.effective_T = t_eff;

    try {
        e.r0 = regression::residualize(design.z0, design.z2);
        e.r1 = regression::residualize(design.z1, design.z2);
    } catch (const NumericalError& err) {
        throw NumericalError(std::string("johansen: rank-deficient short-run regressor matrix (") +
                             err.what() + ")");
    }
    e.s00 = symmetrize(e.r0.transpose() * e.r0 / t);
    e.s11 = symmetrize(e.r1.transpose() * e.r1 / t);
    e.s01 = e.r0.transpose() * e.r1 / t;

    Eigen::LLT<Eigen::MatrixXd> llt00(e.s00);
    if (llt00.info() != Eigen::Success) throw NumericalError("johansen: S00 is not positive definite");
    Eigen::LLT<Eigen::MatrixXd> llt11(e.s11);
    if (llt11.info() != Eigen::Success) throw NumericalError("johansen: S11 is not positive definite");
    const Eigen::MatrixXd l = llt11.matrixL();
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
        if (!(l(i, i) > 0.0) || !std::isfinite(l(i, i))) {
            throw NumericalError("johansen: S11 is not positive definite");
        }
    }

    // M = L^-1 S10 S00^-1 S01 L^-T, symmetric by construction.
    const Eigen::MatrixXd s10_s00inv_s01 = e.s01.transpose() * llt00.solve(e.s01);
    const auto lower = l.triangularView<Eigen::Lower>();
    Eigen::MatrixXd tmp = lower.solve(s10_s00inv_s01);
    Eigen::MatrixXd m = lower.solve(tmp.transpose()).transpose();
    m = symmetrize(m);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) throw NumericalError("johansen: eigen solver failed");
    const auto n_aug = m.rows();
    Eigen::VectorXd values = solver.eigenvalues().reverse();
    Eigen::MatrixXd u = solver.eigenvectors().rowwise().reverse();
    Eigen::MatrixXd v = l.transpose().triangularView<Eigen::Upper>().solve(u);

    for (Eigen::Index j = 0; j < n_aug; ++j) {
        Eigen::Index pivot = 0;
        v.col(j).cwiseAbs().maxCoeff(&pivot);
        if (v(pivot, j) < 0.0) v.col(j) *= -1.0;
    }

    e.eigenvalues.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double raw = values(i);
        const double clamped = std::clamp(raw, 0.0, 1.0 - kEigenCeilingGap);
        e.max_clamp = std::max(e.max_clamp, std::abs(raw - clamped));
        e.eigenvalues(i) = clamped;
    }
    if (e.max_clamp > 1e-10) {
        e.warnings.push_back(
            fmt::format("eigenvalues clamped into [0, 1) by up to {:.3g}", e.max_clamp));
    }
    e.eigenvectors = std::move(v);
    return e;
}

double trace_statistic(const EigenAnalysis& e, int r) {
    const auto n = static_cast<int>(e.n());
    if (r < 0 || r >= n) throw InputError(fmt::format("trace_statistic: r = {} outside [0, {})", r, n));
    double sum = 0.0;
    for (int i = r; i < n; ++i) sum += std::log1p(-e.eigenvalues(i));
    return -static_cast<double>(e.effective_T) * sum;
}

double max_eigen_statistic(const EigenAnalysis& e, int r) {
    const auto n = static_cast<int>(e.n());
    if (r < 0 || r >= n) {
        throw InputError(fmt::format("max_eigen_statistic: r = {} outside [0, {})", r, n));
    }
    return -static_cast<double>(e.effective_T) * std::log1p(-e.eigenvalues(r));
}

CointRankResult rank_decision(const EigenAnalysis& e, Significance level) {
    const auto n = static_cast<int>(e.n());
    CointRankResult out;
    out.deterministic = e.deterministic();
    out.level = level;
    out.effective_T = e.effective_T;
    out.eigenvalues.assign(e.eigenvalues.data(), e.eigenvalues.data() + n);
    out.selected_rank = -1;
    out.max_eigen_rank = -1;
    for (int r = 0; r < n; ++r) {
        const auto cv_trace =
            critical_values::johansen(critical_values::JohansenStatistic::trace, out.deterministic, n - r);
        const auto cv_max = critical_values::johansen(critical_values::JohansenStatistic::max_eigen,
                                                      out.deterministic, n - r);
        DecisionStep step;
        step.r = r;
        step.trace = trace_statistic(e, r);
        step.trace_cv = cv_trace[level];
        step.trace_rejected = step.trace > step.trace_cv;
        step.max_eigen = max_eigen_statistic(e, r);
        step.max_eigen_cv = cv_max[level];
        step.max_eigen_rejected = step.max_eigen > step.max_eigen_cv;
        out.trace_stats.push_back(step.trace);
        out.max_eigen_stats.push_back(step.max_eigen);
        out.trace_critical_values.push_back(cv_trace);
        out.max_eigen_critical_values.push_back(cv_max);
        if (out.selected_rank < 0 && !step.trace_rejected) out.selected_rank = r;
        if (out.max_eigen_rank < 0 && !step.max_eigen_rejected) out.max_eigen_rank = r;
        out.decision_trail.push_back(step);
    }
    if (out.selected_rank < 0) out.selected_rank = n;
    if (out.max_eigen_rank < 0) out.max_eigen_rank = n;
    return out;
}

PantulaResult pantula_select(const series::Panel& p, int k, Significance level) {
    const auto n = static_cast<int>(p.cols());
    std::map<DeterministicCase, CointRankResult> by_case;
    for (auto c : kPantulaCases) by_case.emplace(c, rank_decision(concentrate(p, k, c), level));

    PantulaResult out;
    for (int r = 0; r < n; ++r) {
        for (auto c : kPantulaCases) {
            const auto& step = by_case.at(c).decision_trail[static_cast<std::size_t>(r)];
            out.trail.push_back({r, c, step.trace, step.trace_cv, step.trace_rejected});
            if (!step.trace_rejected) {
                out.deterministic = c;
                out.rank = by_case.at(c);
                out.rank.selected_rank = r;
                return out;
            }
        }
    }
    out.deterministic = DeterministicCase::restricted_trend;
    out.rank = by_case.at(DeterministicCase::restricted_trend);
    out.rank.selected_rank = n;
    return out;
}

}  // namespace coinecon::johansen
