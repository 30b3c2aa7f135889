#include "coinecon/barro_models.hpp"

#include <fmt/format.h>

#include <cmath>
#include <map>
#include <random>

#include "coinecon/errors.hpp"

namespace coinecon::barro {

namespace {

void require_positive(double x, const char* name) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw InputError(fmt::format("equilibrium_price: {} must be positive (got {})", name, x));
    }
}

const std::map<std::string, VariableRole>& roles() {
    static const std::map<std::string, VariableRole> table{
        {"mkpru", {Block::fundamentals, ExpectedSign::either}},
        {"exrate", {Block::fundamentals, ExpectedSign::either}},
        {"ntran", {Block::fundamentals, ExpectedSign::positive}},
        {"naddu", {Block::fundamentals, ExpectedSign::positive}},
        {"bcdde", {Block::fundamentals, ExpectedSign::negative}},
        {"totbc", {Block::fundamentals, ExpectedSign::negative}},
        {"wiki_views", {Block::attractiveness, ExpectedSign::either}},
        {"new_members", {Block::attractiveness, ExpectedSign::either}},
        {"new_posts", {Block::attractiveness, ExpectedSign::either}},
        {"dj", {Block::macro, ExpectedSign::either}},
        {"oil_price", {Block::macro, ExpectedSign::either}},
    };
    return table;
}

}  // namespace

double equilibrium_price(double price_level, double economy_size, double velocity, double stock) {
    require_positive(price_level, "P");
    require_positive(economy_size, "Y");
    require_positive(velocity, "V");
    require_positive(stock, "B");
    return price_level * economy_size / (velocity * stock);
}

EconomyState equilibrium_state(double price_level, double economy_size, double velocity,
                               double stock) {
    return {price_level, economy_size, velocity, stock,
            equilibrium_price(price_level, economy_size, velocity, stock)};
}

double equilibrium_gap(const EconomyState& s) {
    const double demand = s.price_level * s.economy_size / s.velocity;
    return std::abs(s.bitcoin_price * s.stock - demand) / demand;
}

std::string to_string(Block b) {
    switch (b) {
    case Block::fundamentals: return "fundamentals";
    case Block::attractiveness: return "attractiveness";
    case Block::macro: break;
    }
    return "macro";
}

void PriceRegressionSpec::validate() const {
    if (!(noise_sd >= 0.0) || !std::isfinite(noise_sd)) {
        throw InputError(fmt::format("invalid spec: noise_sd must be >= 0 (got {})", noise_sd));
    }
    for (double b : beta) {
        if (!std::isfinite(b)) throw InputError("invalid spec: non-finite coefficient");
    }
    auto check_block = [&](Block block, std::size_t first, std::size_t last) {
        if (included_blocks.count(block) != 0) return;
        for (auto i = first; i <= last; ++i) {
            if (beta[i] != 0.0) {
                throw InputError(fmt::format("invalid spec: beta{} is non-zero but block {} is excluded",
                                             i, to_string(block)));
            }
        }
    };
    check_block(Block::fundamentals, 1, 4);
    check_block(Block::attractiveness, 5, 5);
    check_block(Block::macro, 6, 6);
}

PriceRegressionSpec PriceRegressionSpec::fundamentals_only(double noise_sd) {
    PriceRegressionSpec s;
    s.noise_sd = noise_sd;
    return s;
}

std::string to_string(SupplyRule r) { return r == SupplyRule::fixed_schedule ? "fixed_schedule" : "constant"; }

SupplyRule parse_supply_rule(std::string_view text) {
    if (text == "fixed_schedule" || text == "fixed") return SupplyRule::fixed_schedule;
    if (text == "constant") return SupplyRule::constant;
    throw InputError(fmt::format("unknown supply rule '{}'", text));
}

std::vector<std::string> simulated_variables(const PriceRegressionSpec& spec) {
    std::vector<std::string> names{"mkpru", "exrate", "ntran", "bcdde", "totbc"};
    if (spec.included_blocks.count(Block::attractiveness) != 0) names.emplace_back("wiki_views");
    if (spec.included_blocks.count(Block::macro) != 0) names.emplace_back("dj");
    return names;
}

series::Panel simulate_economy(const PriceRegressionSpec& spec, int T, SupplyRule rule,
                               std::uint64_t seed, const DriverSettings& drivers) {
    if (T < kMinSimulationLength) {
        throw InputError(fmt::format("T too small ({} < {})", T, kMinSimulationLength));
    }
    spec.validate();
    Eigen::LLT<Eigen::Matrix3d> chol(drivers.covariance);
    if (chol.info() != Eigen::Success) {
        throw InputError("invalid spec: driver covariance is not positive definite");
    }
    const Eigen::Matrix3d l = chol.matrixL();
    const bool with_a = spec.included_blocks.count(Block::attractiveness) != 0;
    const bool with_m = spec.included_blocks.count(Block::macro) != 0;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    const auto names = simulated_variables(spec);
    Eigen::MatrixXd data(T, static_cast<Eigen::Index>(names.size()));
    Eigen::Vector3d x(std::log(drivers.p0), std::log(drivers.y0), std::log(drivers.v0));
    double a = std::log(drivers.a0);
    double m = std::log(drivers.m0);
    const double gap0 = drivers.supply_cap - drivers.b0;
    const double kappa = 2.0 / static_cast<double>(T);
    const double daily_issue = gap0 / (4.0 * static_cast<double>(T));

    std::vector<series::Date> dates;
    const auto start = series::parse_date("2010-01-01");
    for (int t = 0; t < T; ++t) {
        if (t > 0) {
            Eigen::Vector3d z(normal(rng), normal(rng), normal(rng));
            x += drivers.drift + l * z;
            if (with_a) a += drivers.attractiveness_drift + drivers.attractiveness_sd * normal(rng);
            if (with_m) m += drivers.macro_drift + drivers.macro_sd * normal(rng);
        }
        const double stock = rule == SupplyRule::fixed_schedule
                                 ? drivers.supply_cap - gap0 * std::exp(-kappa * t)
                                 : drivers.b0 + daily_issue * t;
        const double b = std::log(stock);
        double pb = spec.beta[0] + spec.beta[1] * x(0) + spec.beta[2] * x(1) + spec.beta[3] * x(2) +
                    spec.beta[4] * b + spec.beta[5] * a + spec.beta[6] * m;
        // The draw is skipped at noise_sd = 0 so the noiseless identity holds exactly.
        if (spec.noise_sd > 0.0) pb += spec.noise_sd * normal(rng);

        Eigen::Index col = 0;
        data(t, col++) = pb;
        data(t, col++) = x(0);
        data(t, col++) = x(1);
        data(t, col++) = x(2);
        data(t, col++) = b;
        if (with_a) data(t, col++) = a;
        if (with_m) data(t, col++) = m;
        dates.push_back(start + std::chrono::days(t));
    }
    return series::Panel(names, std::move(dates), std::move(data));
}

series::Panel to_levels(const series::Panel& log_panel) {
    return series::Panel(log_panel.variables(), log_panel.index(), log_panel.data().array().exp().matrix(),
                         log_panel.alignment_policy());
}

std::string to_string(ExpectedSign s) {
    switch (s) {
    case ExpectedSign::positive: return "+";
    case ExpectedSign::negative: return "-";
    case ExpectedSign::either: break;
    }
    return "either";
}

std::string to_string(SignVerdict v) {
    switch (v) {
    case SignVerdict::consistent: return "consistent";
    case SignVerdict::inconsistent: return "inconsistent";
    case SignVerdict::not_applicable: break;
    }
    return "not_applicable";
}

VariableRole role_of(const std::string& variable) {
    const auto it = roles().find(variable);
    if (it == roles().end()) throw InputError(fmt::format("unknown variable '{}'", variable));
    return it->second;
}

std::vector<SignCheckEntry> sign_expectation_check(const vecm::EffectTables& tables,
                                                   const std::set<Block>& blocks) {
    std::vector<SignCheckEntry> out;
    for (const auto& row : tables.long_run) {
        const auto it = roles().find(row.regressor);
        if (it == roles().end()) continue;  // deterministic rows
        SignCheckEntry e;
        e.variable = row.regressor;
        e.effect = row.cell.value;
        e.expected = it->second.sign;
        if (blocks.count(it->second.block) == 0 || e.expected == ExpectedSign::either) {
            e.verdict = SignVerdict::not_applicable;
        } else {
            const bool positive = e.effect > 0.0;
            e.verdict = positive == (e.expected == ExpectedSign::positive) ? SignVerdict::consistent
                                                                           : SignVerdict::inconsistent;
        }
        out.push_back(e);
    }
    return out;
}

}  // namespace coinecon::barro
