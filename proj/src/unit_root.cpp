#include "coinecon/unit_root.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <vector>

#include "coinecon/critical_values.hpp"
#include "coinecon/errors.hpp"
#include "coinecon/regression.hpp"

namespace coinecon::unit_root {

namespace {

std::size_t deterministic_count(UnitRootDeterministic d) {
    switch (d) {
    case UnitRootDeterministic::none: return 0;
    case UnitRootDeterministic::constant: return 1;
    case UnitRootDeterministic::constant_trend: break;
    }
    return 2;
}

struct DfRegression {
    Eigen::MatrixXd x;  // column 0 is y_{t-1}
    Eigen::VectorXd dy;
};

// Rows t = start..n-1 (index into y); requires start >= lags + 1.
DfRegression build_regression(std::span<const double> y, UnitRootDeterministic det,
                              std::size_t lags, std::size_t start) {
    const auto n = y.size();
    const auto rows = static_cast<Eigen::Index>(n - start);
    const auto cols = static_cast<Eigen::Index>(1 + lags + deterministic_count(det));
    DfRegression r{Eigen::MatrixXd(rows, cols), Eigen::VectorXd(rows)};
    for (std::size_t t = start; t < n; ++t) {
        const auto row = static_cast<Eigen::Index>(t - start);
        r.dy(row) = y[t] - y[t - 1];
        r.x(row, 0) = y[t - 1];
        for (std::size_t i = 1; i <= lags; ++i) {
            r.x(row, static_cast<Eigen::Index>(i)) = y[t - i] - y[t - i - 1];
        }
        auto col = static_cast<Eigen::Index>(1 + lags);
        if (det != UnitRootDeterministic::none) r.x(row, col++) = 1.0;
        if (det == UnitRootDeterministic::constant_trend) r.x(row, col) = static_cast<double>(t);
    }
    return r;
}

void fill_decisions(UnitRootResult& result) {
    result.critical_values = critical_values::dickey_fuller(result.deterministic, result.sample_size);
    for (auto level : kAllLevels) {
        result.reject_unit_root[level] = result.statistic < result.critical_values[level];
    }
}

struct TRatio {
    double rho = 0.0;
    double t = 0.0;
    double se = 0.0;
    double s = 0.0;  // regression standard error (df corrected)
    Eigen::VectorXd residuals;
};

TRatio df_t_ratio(const DfRegression& reg) {
    const auto fit = regression::ols(reg.x, reg.dy);
    const auto t_obs = static_cast<double>(reg.x.rows());
    const auto k = static_cast<double>(reg.x.cols());
    const double ssr = fit.residuals.squaredNorm();
    TRatio out;
    out.s = std::sqrt(ssr / (t_obs - k));
    out.rho = fit.coefficients(0, 0);
    out.se = out.s * std::sqrt(fit.xtx_inverse(0, 0));
    if (!(out.se > 0.0)) throw NumericalError("unit-root regression has zero residual variance");
    out.t = out.rho / out.se;
    out.residuals = fit.residuals.col(0);
    return out;
}

}  // namespace

std::string to_string(TestKind kind) { return kind == TestKind::adf ? "adf" : "pp"; }

std::string to_string(Order order) {
    switch (order) {
    case Order::I0: return "I0";
    case Order::I1: return "I1";
    case Order::indeterminate: break;
    }
    return "indeterminate";
}

std::size_t default_max_lags(std::size_t length) {
    return static_cast<std::size_t>(
        std::floor(12.0 * std::pow(static_cast<double>(length) / 100.0, 0.25)));
}

std::size_t auto_bandwidth(std::size_t length) {
    return static_cast<std::size_t>(
        std::floor(4.0 * std::pow(static_cast<double>(length) / 100.0, 2.0 / 9.0)));
}

std::size_t select_lags_aic(std::span<const double> y, std::size_t max_lags,
                            UnitRootDeterministic deterministic) {
    if (max_lags == 0) return 0;
    if (y.size() <= max_lags + 10) {
        throw InputError(fmt::format("select_lags_aic: series too short ({} <= {} + 10)", y.size(),
                                     max_lags));
    }
    const std::size_t start = max_lags + 1;
    const double t_eff = static_cast<double>(y.size() - start);
    std::size_t best = 0;
    double best_aic = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p <= max_lags; ++p) {
        const auto reg = build_regression(y, deterministic, p, start);
        const auto fit = regression::ols(reg.x, reg.dy);
        const double sigma2 = fit.residuals.squaredNorm() / t_eff;
        const double aic = std::log(sigma2) + 2.0 * static_cast<double>(reg.x.cols()) / t_eff;
        if (aic < best_aic) {
            best_aic = aic;
            best = p;
        }
    }
    return best;
}

UnitRootResult adf_test(std::span<const double> y, UnitRootDeterministic deterministic,
                        std::size_t lags) {
    const auto regressors = 1 + lags + deterministic_count(deterministic);
    if (y.size() <= lags + regressors + 2) {
        throw InputError(fmt::format("adf_test: series too short ({} observations for {} lags)",
                                     y.size(), lags));
    }
    const auto reg = build_regression(y, deterministic, lags, lags + 1);
    const auto ratio = df_t_ratio(reg);
    UnitRootResult result;
    result.test = TestKind::adf;
    result.statistic = ratio.t;
    result.lags_or_bandwidth = lags;
    result.deterministic = deterministic;
    result.sample_size = static_cast<std::size_t>(reg.x.rows());
    fill_decisions(result);
    return result;
}

UnitRootResult pp_test(std::span<const double> y, UnitRootDeterministic deterministic,
                       std::optional<std::size_t> bandwidth) {
    if (y.size() <= 20) {
        throw InputError(fmt::format("pp_test: series too short ({} <= 20)", y.size()));
    }
    const auto reg = build_regression(y, deterministic, 0, 1);
    const auto ratio = df_t_ratio(reg);
    const auto n = reg.x.rows();
    const double t_obs = static_cast<double>(n);
    const std::size_t l = bandwidth.value_or(auto_bandwidth(static_cast<std::size_t>(n)));

    const auto& u = ratio.residuals;
    const double gamma0 = u.squaredNorm() / t_obs;
    double lrv = gamma0;
    for (std::size_t j = 1; j <= l && static_cast<Eigen::Index>(j) < n; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        const double gamma_j = u.tail(n - jj).dot(u.head(n - jj)) / t_obs;
        lrv += 2.0 * (1.0 - static_cast<double>(j) / static_cast<double>(l + 1)) * gamma_j;
    }
    if (!(lrv > 0.0)) throw NumericalError("pp_test: non-positive long-run variance");
    const double lambda = std::sqrt(lrv);

    UnitRootResult result;
    result.test = TestKind::pp;
    result.statistic = std::sqrt(gamma0 / lrv) * ratio.t -
                       0.5 * (lrv - gamma0) / lambda * t_obs * ratio.se / ratio.s;
    result.lags_or_bandwidth = l;
    result.deterministic = deterministic;
    result.sample_size = static_cast<std::size_t>(n);
    fill_decisions(result);
    return result;
}

UnitRootResult adf_test(const series::TimeSeries& s, UnitRootDeterministic deterministic,
                        std::size_t lags) {
    const auto v = s.values();
    return adf_test(std::span<const double>(v), deterministic, lags);
}

UnitRootResult pp_test(const series::TimeSeries& s, UnitRootDeterministic deterministic,
                       std::optional<std::size_t> bandwidth) {
    const auto v = s.values();
    return pp_test(std::span<const double>(v), deterministic, bandwidth);
}

UnitRootDeterministic difference_deterministic(UnitRootDeterministic level) {
    return level == UnitRootDeterministic::none ? UnitRootDeterministic::none
                                                : UnitRootDeterministic::constant;
}

IntegrationOrder classify_integration(const series::TimeSeries& s,
                                      UnitRootDeterministic deterministic,
                                      std::optional<std::size_t> max_lags) {
    const auto level = s.values();
    const auto diff = series::difference(s, 1).values();

    auto run = [&](const std::vector<double>& y, UnitRootDeterministic det) {
        auto ceiling = max_lags.value_or(default_max_lags(y.size()));
        // Shrink the ceiling on short series rather than refusing to classify.
        while (ceiling > 0 && y.size() <= ceiling + 10) --ceiling;
        const auto p = select_lags_aic(y, ceiling, det);
        return adf_test(std::span<const double>(y), det, p);
    };

    IntegrationOrder out;
    out.variable = s.name();
    out.level_result = run(level, deterministic);
    out.diff_result = run(diff, difference_deterministic(deterministic));
    if (out.level_result.reject_unit_root.p05) {
        out.order = Order::I0;
    } else if (out.diff_result.reject_unit_root.p05) {
        out.order = Order::I1;
    } else {
        out.order = Order::indeterminate;
    }
    return out;
}

}  // namespace coinecon::unit_root
