#pragma once

#include <array>
#include <string>
#include <string_view>

namespace coinecon {

/// Deterministic terms of a univariate unit-root regression.
enum class UnitRootDeterministic { none, constant, constant_trend };

/// Deterministic specification of a cointegrated VAR, most to least restrictive.
///
///  - none:                  no constant, no trend
///  - restricted_constant:   constant only inside the cointegrating relations
///  - unrestricted_constant: constant in the VECM equations (linear trend in levels)
///  - restricted_trend:      trend inside the relations, unrestricted constant
///  - unrestricted_trend:    unrestricted constant and trend
enum class DeterministicCase {
    none,
    restricted_constant,
    unrestricted_constant,
    restricted_trend,
    unrestricted_trend
};

inline constexpr std::array<DeterministicCase, 5> kAllCases{
    DeterministicCase::none, DeterministicCase::restricted_constant,
    DeterministicCase::unrestricted_constant, DeterministicCase::restricted_trend,
    DeterministicCase::unrestricted_trend};

/// The three middle cases swept by the Pantula procedure, in sweep order.
inline constexpr std::array<DeterministicCase, 3> kPantulaCases{
    DeterministicCase::restricted_constant, DeterministicCase::unrestricted_constant,
    DeterministicCase::restricted_trend};

[[nodiscard]] std::string to_string(UnitRootDeterministic d);
[[nodiscard]] std::string to_string(DeterministicCase c);
[[nodiscard]] UnitRootDeterministic parse_unit_root_deterministic(std::string_view text);
[[nodiscard]] DeterministicCase parse_deterministic_case(std::string_view text);

/// Number of deterministic regressors entering the cointegrating relations (0 or 1).
[[nodiscard]] int restricted_terms(DeterministicCase c) noexcept;

}  // namespace coinecon
