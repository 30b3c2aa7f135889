#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coinecon/barro_models.hpp"
#include "coinecon/deterministic.hpp"
#include "coinecon/diagnostics.hpp"
#include "coinecon/johansen.hpp"
#include "coinecon/series_store.hpp"
#include "coinecon/significance.hpp"
#include "coinecon/unit_root.hpp"
#include "coinecon/vecm.hpp"

namespace coinecon::catalog {

/// The price variable; first in every model.
inline constexpr const char* kPriceVariable = "mkpru";

struct VariableInfo {
    std::string name;
    barro::Block block;
    std::string description;
};

/// The eleven series, in table row order (price first).
[[nodiscard]] const std::vector<VariableInfo>& registry();

struct ModelSpec {
    std::string id;                      ///< "1.1" .. "4.9", or a custom label
    std::vector<std::string> variables;  ///< price first
    std::set<barro::Block> block_tags;

    /// Leading digit of the id ("1" for 1.3); custom specs return their id.
    [[nodiscard]] std::string model_set() const;
};

/// The sixteen fixed specifications.
[[nodiscard]] const std::vector<ModelSpec>& catalog();

/// @throws InputError for an unknown id.
[[nodiscard]] const ModelSpec& find_model(const std::string& id);

/// User-defined spec; block tags come from the registry (other names get none).
/// @throws InputError price not first, duplicates, fewer than 2 variables.
[[nodiscard]] ModelSpec custom_spec(std::string id, std::vector<std::string> variables);

struct PipelineOptions {
    Significance level = Significance::p05;
    UnitRootDeterministic unit_root_deterministic = UnitRootDeterministic::constant;
    std::optional<std::size_t> unit_root_max_lags;
    int max_var_lags = 8;                         ///< AIC ceiling for k
    std::optional<int> lag_order;                 ///< skip AIC when set
    std::optional<DeterministicCase> deterministic;  ///< skip Pantula when set
    int lm_max_lag = diagnostics::kDefaultLmLags;
};

/// A stage that could not complete, with the reason.
struct StageFailure {
    std::string stage;
    std::string reason;
};

struct Provenance {
    series::AlignmentPolicy alignment_policy = series::AlignmentPolicy::intersect_drop;
    int k = 0;
    std::optional<DeterministicCase> deterministic;
    Significance level = Significance::p05;
};

/// Largest k before a warning (four lagged differences).
inline constexpr int kWarnAboveK = 5;

struct PipelineResult {
    std::string model_id;
    std::vector<std::string> variables;
    std::set<barro::Block> block_tags;
    std::vector<unit_root::IntegrationOrder> integration;
    std::vector<double> lag_aic;  ///< AIC for k = 1..ceiling; empty when k was given
    std::optional<johansen::PantulaResult> pantula;
    std::optional<johansen::CointRankResult> rank;
    std::optional<vecm::VecmFit> fit;
    std::optional<vecm::EffectTables> tables;
    std::optional<diagnostics::DiagnosticReport> diagnostics;
    std::vector<barro::SignCheckEntry> sign_check;
    std::vector<StageFailure> failures;
    std::vector<std::string> warnings;
    Provenance provenance;

    [[nodiscard]] bool complete() const noexcept { return failures.empty(); }
    /// Long-run table present (reduced rank between 1 and n-1).
    [[nodiscard]] bool has_long_run() const noexcept;
};

/// k in [1, max_lag] minimising ln det Sigma_k + 2 (n^2 k + n) / T_eff over levels VARs with a
/// constant, all fitted on the sample trimmed for max_lag. Ties go to the smaller k.
[[nodiscard]] int select_var_lag_aic(const series::Panel& log_panel, int max_lag,
                                     std::vector<double>* aic_out = nullptr);

/**
 * @brief Full pipeline for one model on a level-valued panel.
 *
 * log transform, unit-root classification, AIC lag choice, Pantula/Johansen
 * rank, VECM at that rank, inference and diagnostics. Numerical failures and
 * the "nothing to cointegrate" outcomes are recorded in `failures`; at rank 0
 * the difference VAR is reported without long-run tables.
 *
 * @throws InputError a spec variable missing from the panel or non-positive data.
 */
[[nodiscard]] PipelineResult run_model(const ModelSpec& spec, const series::Panel& levels,
                                       const PipelineOptions& options = {});

/// Runs each spec on its own worker; results come back in spec order.
/// Input errors are captured as failures of stage "input".
[[nodiscard]] std::vector<PipelineResult> run_models(const std::vector<ModelSpec>& specs,
                                                     const series::Panel& levels,
                                                     const PipelineOptions& options = {},
                                                     unsigned threads = 0);

}  // namespace coinecon::catalog
