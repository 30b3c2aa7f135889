#pragma once

#include <string>
#include <vector>

#include "coinecon/johansen.hpp"
#include "coinecon/model_catalog.hpp"
#include "coinecon/series_store.hpp"
#include "coinecon/unit_root.hpp"
#include "coinecon/vecm.hpp"

namespace coinecon::render {

enum class TableKind { short_run, long_run };
enum class Format { text, csv };

[[nodiscard]] Format parse_format(std::string_view text);

struct RenderOptions {
    Format format = Format::text;
    bool full = false;        ///< print every estimate, ignoring the dash rule
    int short_run_digits = 3;
    int long_run_digits = 2;
};

/// "0.147***", or "-" when dashed. Zero after rounding prints unsigned.
[[nodiscard]] std::string format_cell(const vecm::CoefficientCell& cell, int digits, bool full);

/**
 * @brief Column-per-model grid of price-equation effects.
 *
 * short_run rows: LD.x .. L{m}D.x for every variable of any model (price
 * first, then registry order) with m the largest k - 1, then constant.
 * long_run rows: the non-price variables in the same order, trend when any
 * model restricts one, constant last. Missing regressors print "-".
 * Output depends only on the results, so equal inputs give equal bytes.
 */
[[nodiscard]] std::string render_tables(const std::vector<catalog::PipelineResult>& results,
                                        TableKind which, const RenderOptions& options = {},
                                        const std::string& title = {});

/// Lower triangle with unit diagonal (text) or the full matrix (csv).
[[nodiscard]] std::string render_correlation(const series::CorrelationMatrix& c, Format format,
                                             int digits = 2);

/// One row per regressor: section,equation,regressor,value,std_error,t_stat,stars,display.
[[nodiscard]] std::string effect_tables_csv(const vecm::EffectTables& tables);

/// Aligned plain text of one fit's tables (every equation).
[[nodiscard]] std::string effect_tables_text(const vecm::EffectTables& tables, bool full = false);

struct UnitRootRow {
    std::string variable;
    unit_root::UnitRootResult adf_level;
    unit_root::UnitRootResult adf_diff;
    unit_root::UnitRootResult pp_level;
    unit_root::UnitRootResult pp_diff;
    unit_root::Order order = unit_root::Order::indeterminate;
};

[[nodiscard]] std::string render_unit_roots(const std::vector<UnitRootRow>& rows, Format format);

[[nodiscard]] std::string render_rank(const johansen::CointRankResult& rank, Format format);

/// One line per model: LM / JB / stability verdicts, or the stage failures.
[[nodiscard]] std::string render_diagnostics_summary(const std::vector<catalog::PipelineResult>& results);

}  // namespace coinecon::render
