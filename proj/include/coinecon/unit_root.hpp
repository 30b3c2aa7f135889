#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "coinecon/deterministic.hpp"
#include "coinecon/series_store.hpp"
#include "coinecon/significance.hpp"

namespace coinecon::unit_root {

enum class TestKind { adf, pp };

[[nodiscard]] std::string to_string(TestKind kind);

/**
 * @brief Outcome of a Dickey-Fuller type unit-root test.
 *
 * The tests are left-tailed: the unit-root null is rejected at level l when
 * statistic < critical_values[l].
 */
struct UnitRootResult {
    TestKind test = TestKind::adf;
    double statistic = 0.0;              ///< t-ratio on the lagged level (Z_t for PP)
    std::size_t lags_or_bandwidth = 0;   ///< ADF augmentation lags or PP Bartlett bandwidth
    UnitRootDeterministic deterministic = UnitRootDeterministic::constant;
    LevelMap<double> critical_values;
    LevelMap<bool> reject_unit_root;
    std::size_t sample_size = 0;         ///< observations in the test regression
};

enum class Order { I0, I1, indeterminate };

[[nodiscard]] std::string to_string(Order order);

/// I1 iff the level test does not reject at 5% and the difference test does;
/// I0 iff the level test rejects at 5%; otherwise indeterminate.
struct IntegrationOrder {
    std::string variable;
    Order order = Order::indeterminate;
    UnitRootResult level_result;
    UnitRootResult diff_result;
};

/// floor(12 (T/100)^(1/4)).
[[nodiscard]] std::size_t default_max_lags(std::size_t length);

/// floor(4 (T/100)^(2/9)).
[[nodiscard]] std::size_t auto_bandwidth(std::size_t length);

/// Lag order in [0, max_lags] minimising ln(sigma^2) + 2 k / T_eff over ADF
/// regressions sharing the sample trimmed for max_lags. Ties go to the smaller lag.
/// @throws InputError when length <= max_lags + 10.
[[nodiscard]] std::size_t select_lags_aic(std::span<const double> y, std::size_t max_lags,
                                          UnitRootDeterministic deterministic);

/// Augmented Dickey-Fuller: dy_t = d_t + rho y_{t-1} + sum_i delta_i dy_{t-i} + e_t.
/// @throws InputError series too short; NumericalError singular regression.
[[nodiscard]] UnitRootResult adf_test(std::span<const double> y,
                                      UnitRootDeterministic deterministic, std::size_t lags);

/// Phillips-Perron Z_t with a Bartlett-kernel long-run variance.
/// `bandwidth` nullopt selects auto_bandwidth(T).
[[nodiscard]] UnitRootResult pp_test(std::span<const double> y,
                                     UnitRootDeterministic deterministic,
                                     std::optional<std::size_t> bandwidth = std::nullopt);

[[nodiscard]] UnitRootResult adf_test(const series::TimeSeries& s,
                                      UnitRootDeterministic deterministic, std::size_t lags);
[[nodiscard]] UnitRootResult pp_test(const series::TimeSeries& s,
                                     UnitRootDeterministic deterministic,
                                     std::optional<std::size_t> bandwidth = std::nullopt);

/// ADF with AIC lags on the level (given deterministic terms) and on the first
/// difference (constant; none when the level uses none).
[[nodiscard]] IntegrationOrder classify_integration(
    const series::TimeSeries& s, UnitRootDeterministic deterministic,
    std::optional<std::size_t> max_lags = std::nullopt);

/// Deterministic terms used for the difference test given the level's.
[[nodiscard]] UnitRootDeterministic difference_deterministic(UnitRootDeterministic level);

}  // namespace coinecon::unit_root
