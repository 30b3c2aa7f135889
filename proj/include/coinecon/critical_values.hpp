#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "coinecon/deterministic.hpp"
#include "coinecon/significance.hpp"

/// Embedded critical-value tables (data/critical_values.txt).
///
/// The file is compiled into the library together with its SHA-256 manifest
/// and parsed on first use; a checksum mismatch aborts the parse.
namespace coinecon::critical_values {

/// Dickey-Fuller tau critical values at effective sample size T (response
/// surface in 1/T). Left-tailed: p01 < p05 < p10.
[[nodiscard]] LevelMap<double> dickey_fuller(UnitRootDeterministic deterministic,
                                             std::size_t sample_size);

enum class JohansenStatistic { trace, max_eigen };

/// Asymptotic right-tail critical values for n - r = `dimension`.
/// @throws InputError when the table has no entry (dimension outside 1..12).
[[nodiscard]] LevelMap<double> johansen(JohansenStatistic statistic, DeterministicCase c,
                                        int dimension);

/// Largest n - r covered by the Johansen tables.
[[nodiscard]] int johansen_max_dimension();

[[nodiscard]] std::string_view embedded_text();
[[nodiscard]] std::string_view manifest_sha256();
[[nodiscard]] std::string table_version();

}  // namespace coinecon::critical_values
