#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "coinecon/series_store.hpp"
#include "coinecon/vecm.hpp"

namespace coinecon::barro {

/// Money-market equilibrium of a coin economy: supply B P_B equals demand P Y / V.
struct EconomyState {
    double price_level = 1.0;    ///< P
    double economy_size = 1.0;   ///< Y
    double velocity = 1.0;       ///< V
    double stock = 1.0;          ///< B
    double bitcoin_price = 1.0;  ///< P_B
};

/// P Y / (V B). @throws InputError on a non-positive input.
[[nodiscard]] double equilibrium_price(double price_level, double economy_size, double velocity,
                                       double stock);

[[nodiscard]] EconomyState equilibrium_state(double price_level, double economy_size,
                                             double velocity, double stock);

/// |P_B B - P Y / V| relative to P Y / V.
[[nodiscard]] double equilibrium_gap(const EconomyState& s);

enum class Block { fundamentals, attractiveness, macro };

[[nodiscard]] std::string to_string(Block b);

/**
 * @brief Log-linear price equation
 *   p^B = b0 + b1 p + b2 y + b3 v + b4 b + b5 a + b6 m + e,  e ~ N(0, noise_sd^2).
 *
 * Coefficients of blocks not listed in `included_blocks` must be zero.
 */
struct PriceRegressionSpec {
    std::array<double, 7> beta{0.0, 1.0, 1.0, -1.0, -1.0, 0.0, 0.0};
    std::set<Block> included_blocks{Block::fundamentals};
    double noise_sd = 0.0;

    /// @throws InputError negative/non-finite noise or a non-zero excluded coefficient.
    void validate() const;

    /// The log of the equilibrium price: (0, 1, 1, -1, -1).
    [[nodiscard]] static PriceRegressionSpec fundamentals_only(double noise_sd = 0.0);
};

enum class SupplyRule { fixed_schedule, constant };

[[nodiscard]] std::string to_string(SupplyRule r);
[[nodiscard]] SupplyRule parse_supply_rule(std::string_view text);

/// Random-walk drivers (p, y, v), plus a and m when their blocks are active.
struct DriverSettings {
    Eigen::Vector3d drift{0.0, 0.002, 0.0005};
    Eigen::Matrix3d covariance = Eigen::Vector3d(0.006 * 0.006, 0.04 * 0.04, 0.05 * 0.05).asDiagonal();
    double attractiveness_drift = 0.001;
    double attractiveness_sd = 0.08;
    double macro_drift = 0.0003;
    double macro_sd = 0.01;
    /// Starting levels.
    double p0 = 1.3;
    double y0 = 1.0e5;
    double v0 = 0.005;
    double b0 = 2.0e6;
    double a0 = 1000.0;
    double m0 = 10000.0;
    double supply_cap = 21.0e6;
};

inline constexpr int kMinSimulationLength = 100;

/// Panel column names: mkpru (p^B), exrate (p), ntran (y), bcdde (v), totbc (b),
/// then wiki_views (a) and dj (m) when those blocks are active.
[[nodiscard]] std::vector<std::string> simulated_variables(const PriceRegressionSpec& spec);

/**
 * @brief Simulates a log-level economy of length T starting 2010-01-01 (daily).
 *
 * fixed_schedule: B_t = cap - (cap - B_0) exp(-kappa t) with kappa = 2 / T,
 * so issuance shrinks geometrically over the horizon. constant: B grows by the
 * same amount each day, (cap - B_0) / (4 T).
 *
 * @throws InputError T < 100 ("T too small") or an invalid spec.
 */
[[nodiscard]] series::Panel simulate_economy(const PriceRegressionSpec& spec, int T,
                                             SupplyRule rule, std::uint64_t seed,
                                             const DriverSettings& drivers = {});

/// exp() of every cell.
[[nodiscard]] series::Panel to_levels(const series::Panel& log_panel);

enum class ExpectedSign { positive, negative, either };
enum class SignVerdict { consistent, inconsistent, not_applicable };

[[nodiscard]] std::string to_string(ExpectedSign s);
[[nodiscard]] std::string to_string(SignVerdict v);

struct SignCheckEntry {
    std::string variable;
    double effect = 0.0;
    ExpectedSign expected = ExpectedSign::either;
    SignVerdict verdict = SignVerdict::not_applicable;
};

/// Theoretical sign of a registry variable's long-run effect on the price and its block.
struct VariableRole {
    Block block = Block::fundamentals;
    ExpectedSign sign = ExpectedSign::either;
};

/// @throws InputError for unknown variables.
[[nodiscard]] VariableRole role_of(const std::string& variable);

/// Compares long-run signs with the equilibrium-price expectations. Variables
/// outside `blocks` and either-sign roles count as not_applicable.
[[nodiscard]] std::vector<SignCheckEntry> sign_expectation_check(const vecm::EffectTables& tables,
                                                                 const std::set<Block>& blocks);

}  // namespace coinecon::barro
