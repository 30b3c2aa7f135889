#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coinecon/barro_models.hpp"
#include "coinecon/deterministic.hpp"
#include "coinecon/render.hpp"
#include "coinecon/series_store.hpp"
#include "coinecon/significance.hpp"

namespace repcli {

using KeyValues = std::map<std::string, std::string>;

/// Effective settings of one run. Every field has a flat key of the same name.
struct RunConfig {
    std::vector<std::string> data;
    coinecon::series::AlignmentPolicy alignment = coinecon::series::AlignmentPolicy::forward_fill_macro;
    coinecon::Significance level = coinecon::Significance::p05;
    int max_lags = 8;
    std::vector<std::string> models{"all"};
    std::vector<std::string> variables;  ///< custom spec, price first
    std::filesystem::path out = "out";
    std::set<std::string> formats{"text", "csv", "json"};
    std::uint64_t seed = 42;
    coinecon::UnitRootDeterministic deterministic = coinecon::UnitRootDeterministic::constant;
    std::optional<std::size_t> unit_root_max_lags;
    std::optional<coinecon::DeterministicCase> johansen_case;
    std::optional<int> lags;
    std::optional<int> rank;
    bool full = false;
    int lm_lags = 4;
    unsigned threads = 0;
    bool plot_data = false;
    bool log_transform = true;          ///< unitroot: test logs rather than levels
    bool corr_logs = false;             ///< correlation document on logs rather than levels
    // simulate
    int T = 1000;
    double noise_sd = 0.0;
    coinecon::barro::SupplyRule supply_rule = coinecon::barro::SupplyRule::fixed_schedule;
    std::set<coinecon::barro::Block> blocks{coinecon::barro::Block::fundamentals};
    int digits = 7;

    [[nodiscard]] bool wants(const std::string& format) const { return formats.count(format) != 0; }
};

/// Built-in defaults as key/value text.
[[nodiscard]] KeyValues default_values();

/// Reads "key = value" lines; '#' starts a comment.
/// @throws coinecon::InputError unreadable file, malformed line or unknown key.
[[nodiscard]] KeyValues read_config_file(const std::filesystem::path& path);

/// defaults < config file < flags.
[[nodiscard]] KeyValues merge(const KeyValues& defaults, const KeyValues& file, const KeyValues& flags);

/// Validates and converts. @throws coinecon::InputError.
[[nodiscard]] RunConfig to_config(const KeyValues& kv);

[[nodiscard]] bool is_known_key(const std::string& key);

}  // namespace repcli
