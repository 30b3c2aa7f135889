#pragma once

// Hand-built pipeline results with known cells, used to check table layout.

#include <vector>

#include "coinecon/model_catalog.hpp"
#include "coinecon/vecm.hpp"

namespace render_fixture {

inline coinecon::catalog::PipelineResult model(std::string id, std::vector<std::string> variables, int k,
                                               std::vector<coinecon::vecm::NamedCell> price_short_run,
                                               std::vector<coinecon::vecm::NamedCell> long_run,
                                               coinecon::vecm::CoefficientCell constant) {
    coinecon::catalog::PipelineResult r;
    r.model_id = std::move(id);
    r.variables = variables;
    coinecon::vecm::VecmFit fit;
    fit.rank = 1;
    fit.lag_order = k;
    r.fit = fit;
    coinecon::vecm::EffectTables t;
    t.variables = variables;
    t.rank = 1;
    t.lag_order = k;
    t.normalized_on = "mkpru";
    t.short_run.resize(variables.size());
    t.short_run[0] = std::move(price_short_run);
    t.adjustment.resize(variables.size());
    t.long_run = std::move(long_run);
    t.long_run_constant = constant;
    r.tables = t;
    r.provenance.k = k;
    return r;
}

/// Model A: mkpru, ntran with k = 3. Model B: mkpru, wiki_views with k = 2.
inline std::vector<coinecon::catalog::PipelineResult> two_models() {
    using coinecon::vecm::make_cell;
    return {
        model("A", {"mkpru", "ntran"}, 3,
              {{"LD.mkpru", make_cell(0.147, 0.03)},
               {"LD.ntran", make_cell(0.05, 0.028)},
               {"L2D.mkpru", make_cell(0.01, 0.1)},
               {"L2D.ntran", make_cell(-0.3, 0.1)},
               {"constant", make_cell(0.2, 1.0)}},
              {{"ntran", make_cell(5.07, 1.0)}}, make_cell(-77.35, 10.0)),
        model("B", {"mkpru", "wiki_views"}, 2,
              {{"LD.mkpru", make_cell(0.2, 0.09)},
               {"LD.wiki_views", make_cell(0.1, 0.1)},
               {"constant", make_cell(0.02, 0.1)}},
              {{"wiki_views", make_cell(0.4, 0.5)}}, make_cell(1.0, 5.0)),
    };
}

}  // namespace render_fixture
