#include "commands.hpp"

#include <boost/version.hpp>
#include <fmt/format.h>

#include <Eigen/Core>
#include <algorithm>
#include <iostream>
#include <set>
#include <sstream>

#include "coinecon/checksum.hpp"
#include "coinecon/critical_values.hpp"
#include "coinecon/errors.hpp"
#include "coinecon/json_export.hpp"
#include "coinecon/model_catalog.hpp"
#include "coinecon/render.hpp"
#include "output.hpp"

namespace repcli {

namespace cs = coinecon::series;
namespace cat = coinecon::catalog;
using coinecon::InputError;
using Json = coinecon::json_export::Json;

namespace {

struct LoadedData {
    std::vector<cs::TimeSeries> series;
    std::vector<cs::LoadReport> reports;
};

LoadedData load_all(const RunConfig& cfg) {
    if (cfg.data.empty()) throw InputError("no data files given (use --data FILE or list files)");
    LoadedData out;
    std::set<std::string> names;
    for (const auto& path : cfg.data) {
        auto loaded = cs::load_csv(path);
        for (auto& s : loaded.series) {
            if (!names.insert(s.name()).second) {
                throw InputError(fmt::format("{}: series '{}' already loaded from another file", path, s.name()));
            }
            out.series.push_back(std::move(s));
        }
        out.reports.push_back(std::move(loaded.report));
    }
    return out;
}

std::vector<cs::TimeSeries> pick(const std::vector<cs::TimeSeries>& all, const std::vector<std::string>& names) {
    std::vector<cs::TimeSeries> out;
    for (const auto& n : names) {
        const auto it = std::find_if(all.begin(), all.end(), [&](const cs::TimeSeries& s) { return s.name() == n; });
        if (it == all.end()) throw InputError(fmt::format("variable '{}' not found in the data", n));
        out.push_back(*it);
    }
    return out;
}

Json provenance(const Invocation& inv, const OutputWriter& writer) {
    Json data = Json::array();
    for (const auto& path : inv.config.data) {
        data.push_back({{"path", path}, {"sha256", coinecon::sha256_file(path)}});
    }
    Json config = Json::object();
    for (const auto& [k, v] : inv.effective) config[k] = v;
    return Json{{"tool", "repcli"},
                {"version", COINECON_VERSION},
                {"command", inv.command},
                {"config", std::move(config)},
                {"critical_values",
                 {{"version", coinecon::critical_values::table_version()},
                  {"sha256", std::string(coinecon::critical_values::manifest_sha256())}}},
                {"data", std::move(data)},
                {"libraries",
                 {{"eigen", fmt::format("{}.{}.{}", EIGEN_WORLD_VERSION, EIGEN_MAJOR_VERSION, EIGEN_MINOR_VERSION)},
                  {"fmt", FMT_VERSION},
                  {"boost", BOOST_LIB_VERSION}}},
                {"outputs", writer.written()}};
}

void finish(const Invocation& inv, OutputWriter& writer) {
    writer.write("provenance.json", provenance(inv, writer).dump(2) + "\n");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Model list for replicate / johansen / vecm.
std::vector<cat::ModelSpec> selected_specs(const RunConfig& cfg) {
    std::vector<cat::ModelSpec> specs;
    if (!cfg.variables.empty()) specs.push_back(cat::custom_spec("custom", cfg.variables));
    for (const auto& id : cfg.models) {
        if (id == "all") {
            if (!cfg.variables.empty()) continue;
            const auto& all = cat::catalog();
            specs.insert(specs.end(), all.begin(), all.end());
        } else {
            specs.push_back(cat::find_model(id));
        }
    }
    return specs;
}

cat::PipelineOptions pipeline_options(const RunConfig& cfg) {
    cat::PipelineOptions o;
    o.level = cfg.level;
    o.unit_root_deterministic = cfg.deterministic;
    o.unit_root_max_lags = cfg.unit_root_max_lags;
    o.max_var_lags = cfg.max_lags;
    o.lag_order = cfg.lags;
    o.deterministic = cfg.johansen_case;
    o.lm_max_lag = cfg.lm_lags;
    return o;
}

// Single system for johansen / vecm: custom variables, or exactly one model id.
struct System {
    cat::ModelSpec spec;
    cs::Panel logs;
};

System single_system(const RunConfig& cfg, const LoadedData& data) {
    auto specs = selected_specs(cfg);
    if (specs.size() != 1) {
        throw InputError("select one system: --variables mkpru,x,... or --models <id>");
    }
    auto spec = specs.front();
    const auto panel = cs::align(pick(data.series, spec.variables), cfg.alignment);
    return {spec, cs::log_transform(panel)};
}

int choose_k(const RunConfig& cfg, const cs::Panel& logs) {
    if (cfg.lags) return *cfg.lags;
    int ceiling = cfg.max_lags;
    const auto n = logs.cols();
    while (ceiling > 1 && logs.rows() <= n * (ceiling + 1) + n + 11) --ceiling;
    return cat::select_var_lag_aic(logs, ceiling);
}

std::vector<std::string> non_price(const std::vector<std::string>& vars) {
    std::vector<std::string> out;
    for (const auto& v : vars) {
        if (v != cat::kPriceVariable) out.push_back(v);
    }
    return out;
}

// Registry order first, then the rest as loaded.
std::vector<std::string> registry_order(const std::vector<std::string>& vars) {
    std::vector<std::string> out;
    for (const auto& info : cat::registry()) {
        if (std::find(vars.begin(), vars.end(), info.name) != vars.end()) out.push_back(info.name);
    }
    for (const auto& v : vars) {
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
    return out;
}

void write_correlation(const RunConfig& cfg, OutputWriter& w, const std::string& stem,
                       const std::vector<cs::TimeSeries>& series) {
    auto panel = cs::align(series, cfg.alignment);
    if (cfg.corr_logs) panel = cs::log_transform(panel);
    const auto corr = cs::correlation_matrix(panel);
    if (cfg.wants("text")) {
        std::string text = fmt::format("Correlation coefficients ({}, {}, T = {})\n\n",
                                       cfg.corr_logs ? "logs" : "levels", cs::to_string(cfg.alignment), panel.rows());
        text += coinecon::render::render_correlation(corr, coinecon::render::Format::text);
        const auto pairs = cs::high_correlation_pairs(corr, 0.8);
        if (!pairs.empty()) {
            text += "\nPairs with |corr| > 0.8:\n";
            for (const auto& p : pairs) text += fmt::format("  {} - {}: {:.2f}\n", p.first, p.second, p.value);
        }
        w.write(stem + ".txt", text);
    }
    if (cfg.wants("csv")) w.write(stem + ".csv", coinecon::render::render_correlation(corr, coinecon::render::Format::csv));
    if (cfg.wants("json")) w.write(stem + ".json", dump(coinecon::json_export::to_json(corr)));
}

}  // namespace

int cmd_ingest(const Invocation& inv) {
    const auto& cfg = inv.config;
    const auto data = load_all(cfg);
    OutputWriter w(cfg.out);
    Json reports = Json::array();
    for (const auto& r : data.reports) reports.push_back(coinecon::json_export::to_json(r));
    w.write("load_report.json", dump(Json{{"files", std::move(reports)}, {"series_count", data.series.size()}}));
    std::ostringstream cache;
    cs::write_wide_csv(cache, data.series);
    w.write("series_cache.csv", cache.str());
    finish(inv, w);
    for (const auto& r : data.reports) {
        std::cout << fmt::format("{}: {} rows read, {} dropped, {} series\n", r.source, r.rows_read, r.rows_dropped,
                                 r.series.size());
        for (const auto& s : r.series) {
            std::cout << fmt::format("  {:<12} {} .. {}  n = {}\n", s.name, cs::format_date(s.first_date),
                                     cs::format_date(s.last_date), s.n);
        }
    }
    std::cout << fmt::format("{} series validated; cache written to {}\n", data.series.size(),
                             (w.dir() / "series_cache.csv").string());
    return 0;
}

int cmd_unitroot(const Invocation& inv) {
    namespace ur = coinecon::unit_root;
    const auto& cfg = inv.config;
    const auto data = load_all(cfg);
    const auto series = cfg.variables.empty() ? data.series : pick(data.series, cfg.variables);
    std::vector<coinecon::render::UnitRootRow> rows;
    Json out = Json::array();
    for (const auto& raw : series) {
        const auto s = cfg.log_transform ? cs::log_transform(raw) : raw;
        coinecon::render::UnitRootRow row;
        row.variable = s.name();
        const auto order = ur::classify_integration(s, cfg.deterministic, cfg.unit_root_max_lags);
        row.adf_level = order.level_result;
        row.adf_diff = order.diff_result;
        row.pp_level = ur::pp_test(s, cfg.deterministic);
        row.pp_diff = ur::pp_test(cs::difference(s), ur::difference_deterministic(cfg.deterministic));
        row.order = order.order;
        Json j = coinecon::json_export::to_json(order);
        j["pp_level"] = coinecon::json_export::to_json(row.pp_level);
        j["pp_difference"] = coinecon::json_export::to_json(row.pp_diff);
        out.push_back(std::move(j));
        rows.push_back(std::move(row));
    }
    OutputWriter w(cfg.out);
    const auto text = fmt::format("Unit-root tests on {} ({} deterministic terms; 5% decisions)\n\n",
                                  cfg.log_transform ? "logs" : "levels", coinecon::to_string(cfg.deterministic)) +
                      coinecon::render::render_unit_roots(rows, coinecon::render::Format::text);
    if (cfg.wants("text")) w.write("unitroot.txt", text);
    if (cfg.wants("csv")) w.write("unitroot.csv", coinecon::render::render_unit_roots(rows, coinecon::render::Format::csv));
    if (cfg.wants("json")) w.write("unitroot.json", dump(out));
    finish(inv, w);
    std::cout << text;
    return 0;
}

int cmd_johansen(const Invocation& inv) {
    namespace jo = coinecon::johansen;
    const auto& cfg = inv.config;
    const auto data = load_all(cfg);
    const auto sys = single_system(cfg, data);
    const int k = choose_k(cfg, sys.logs);
    Json j{{"model", sys.spec.id}, {"variables", sys.spec.variables}, {"k", k}};
    jo::CointRankResult rank;
    if (cfg.johansen_case) {
        rank = jo::rank_decision(jo::concentrate(sys.logs, k, *cfg.johansen_case), cfg.level);
    } else {
        const auto p = jo::pantula_select(sys.logs, k, cfg.level);
        j["pantula"] = coinecon::json_export::to_json(p);
        rank = p.rank;
    }
    j["rank"] = coinecon::json_export::to_json(rank);
    OutputWriter w(cfg.out);
    const auto text = fmt::format("Johansen rank test, model {} ({}), k = {}\n\n", sys.spec.id,
                                  fmt::join(sys.spec.variables, ", "), k) +
                      coinecon::render::render_rank(rank, coinecon::render::Format::text);
    if (cfg.wants("text")) w.write("johansen.txt", text);
    if (cfg.wants("csv")) w.write("johansen.csv", coinecon::render::render_rank(rank, coinecon::render::Format::csv));
    if (cfg.wants("json")) w.write("johansen.json", dump(j));
    finish(inv, w);
    std::cout << text;
    return 0;
}

int cmd_vecm(const Invocation& inv) {
    namespace jo = coinecon::johansen;
    namespace vm = coinecon::vecm;
    const auto& cfg = inv.config;
    const auto data = load_all(cfg);
    const auto sys = single_system(cfg, data);
    const int k = choose_k(cfg, sys.logs);
    const auto n = static_cast<int>(sys.logs.cols());

    coinecon::DeterministicCase c{};
    int r = 0;
    if (cfg.johansen_case) {
        c = *cfg.johansen_case;
        r = jo::rank_decision(jo::concentrate(sys.logs, k, c), cfg.level).selected_rank;
    } else {
        const auto p = jo::pantula_select(sys.logs, k, cfg.level);
        c = p.deterministic;
        r = p.rank.selected_rank;
    }
    if (cfg.rank) {
        if (*cfg.rank < 0 || *cfg.rank > n) throw InputError(fmt::format("rank {} outside [0, {}]", *cfg.rank, n));
        r = *cfg.rank;
    }
    auto fit = vm::fit_at_rank(jo::concentrate(sys.logs, k, c), r);
    if (r >= 1 && r < n) fit = vm::normalize_long_run(fit, sys.spec.variables.front());
    const auto tables = vm::inference(fit);
    const auto diag = coinecon::diagnostics::run_diagnostics(fit, cfg.lm_lags);

    OutputWriter w(cfg.out);
    std::string text = fmt::format("VECM, model {} ({})\n", sys.spec.id, fmt::join(sys.spec.variables, ", "));
    text += coinecon::render::effect_tables_text(tables, cfg.full);
    text += "\nDiagnostics:";
    for (const auto& [test, pass] : diag.verdicts) text += fmt::format(" {}={}", test, pass ? "pass" : "fail");
    text += "\n";
    if (cfg.wants("text")) w.write("vecm.txt", text);
    if (cfg.wants("csv")) w.write("vecm.csv", coinecon::render::effect_tables_csv(tables));
    if (cfg.wants("json")) {
        w.write("vecm.json", dump(Json{{"model", sys.spec.id},
                                       {"fit", coinecon::json_export::to_json(fit)},
                                       {"tables", coinecon::json_export::to_json(tables)},
                                       {"diagnostics", coinecon::json_export::to_json(diag)}}));
    }
    finish(inv, w);
    std::cout << text;
    return 0;
}

int cmd_replicate(const Invocation& inv) {
    namespace rd = coinecon::render;
    const auto& cfg = inv.config;
    const auto data = load_all(cfg);
    std::set<std::string> available;
    for (const auto& s : data.series) available.insert(s.name());

    std::vector<cat::ModelSpec> runnable;
    std::vector<std::string> notices;
    for (const auto& spec : selected_specs(cfg)) {
        std::vector<std::string> missing;
        for (const auto& v : spec.variables) {
            if (available.count(v) == 0) missing.push_back(v);
        }
        if (missing.empty()) {
            runnable.push_back(spec);
        } else {
            notices.push_back(fmt::format("model {} skipped: missing {}", spec.id, fmt::join(missing, ", ")));
        }
    }
    for (const auto& n : notices) std::cerr << "notice: " << n << "\n";
    if (runnable.empty()) throw InputError("no model can be estimated with the supplied variables");

    std::vector<std::string> used;
    for (const auto& spec : runnable) {
        for (const auto& v : spec.variables) {
            if (std::find(used.begin(), used.end(), v) == used.end()) used.push_back(v);
        }
    }
    used = registry_order(used);
    const auto panel = cs::align(pick(data.series, used), cfg.alignment);
    const auto results = cat::run_models(runnable, panel, pipeline_options(cfg), cfg.threads);

    OutputWriter w(cfg.out);
    const auto corr_vars = non_price(used);
    if (corr_vars.size() >= 2) write_correlation(cfg, w, "correlation", pick(data.series, corr_vars));

    std::vector<cat::PipelineResult> sets_1_3;
    std::vector<cat::PipelineResult> set_4;
    for (const auto& r : results) {
        const auto set = r.model_id.substr(0, r.model_id.find('.'));
        (set == "4" ? set_4 : sets_1_3).push_back(r);
    }
    struct Doc {
        std::string stem;
        const std::vector<cat::PipelineResult>* group;
        rd::TableKind kind;
        std::string title;
    };
    const std::vector<Doc> docs{
        {"short_run_sets_1_3", &sets_1_3, rd::TableKind::short_run, "Short-run effects on the price, model sets 1-3"},
        {"short_run_set_4", &set_4, rd::TableKind::short_run, "Short-run effects on the price, general models"},
        {"long_run_sets_1_3", &sets_1_3, rd::TableKind::long_run, "Long-run effects on the price, model sets 1-3"},
        {"long_run_set_4", &set_4, rd::TableKind::long_run, "Long-run effects on the price, general models"},
    };
    for (const auto& d : docs) {
        if (d.group->empty()) continue;
        rd::RenderOptions o;
        o.full = cfg.full;
        if (cfg.wants("text")) w.write(d.stem + ".txt", rd::render_tables(*d.group, d.kind, o, d.title));
        if (cfg.wants("csv")) {
            o.format = rd::Format::csv;
            w.write(d.stem + ".csv", rd::render_tables(*d.group, d.kind, o));
        }
    }
    std::string summary = rd::render_diagnostics_summary(results);
    for (const auto& n : notices) summary += n + "\n";
    w.write("diagnostics.txt", summary);
    if (cfg.wants("json")) {
        w.write("results.json", dump(Json{{"notices", notices}, {"models", coinecon::json_export::to_json(results)}}));
    }
    if (cfg.plot_data && panel.has(cat::kPriceVariable)) {
        std::ostringstream plot;
        cs::write_wide_csv(plot, std::vector<cs::TimeSeries>{panel.series(cat::kPriceVariable)});
        w.write("price_plot.csv", plot.str());
    }
    finish(inv, w);
    std::cout << summary;
    const bool any = std::any_of(results.begin(), results.end(), [](const cat::PipelineResult& r) {
        return r.fit.has_value();
    });
    return any ? 0 : 2;
}

int cmd_simulate(const Invocation& inv) {
    namespace bm = coinecon::barro;
    const auto& cfg = inv.config;
    bm::PriceRegressionSpec spec;
    spec.included_blocks = cfg.blocks;
    spec.noise_sd = cfg.noise_sd;
    if (cfg.blocks.count(bm::Block::fundamentals) == 0) {
        for (std::size_t i = 1; i <= 4; ++i) spec.beta[i] = 0.0;
    }
    if (cfg.blocks.count(bm::Block::attractiveness) != 0) spec.beta[5] = 0.5;
    if (cfg.blocks.count(bm::Block::macro) != 0) spec.beta[6] = 0.5;
    const auto logs = bm::simulate_economy(spec, cfg.T, cfg.supply_rule, cfg.seed);
    const auto levels = bm::to_levels(logs);

    std::vector<cs::TimeSeries> series;
    for (const auto& v : levels.variables()) series.push_back(levels.series(v));
    std::ostringstream csv;
    cs::write_wide_csv(csv, series, cfg.digits);

    OutputWriter w(cfg.out);
    w.write("simulated.csv", csv.str());
    Json blocks = Json::array();
    for (auto b : spec.included_blocks) blocks.push_back(bm::to_string(b));
    w.write("manifest.json", dump(Json{{"file", "simulated.csv"},
                                       {"sha256", coinecon::sha256_hex(csv.str())},
                                       {"seed", cfg.seed},
                                       {"T", cfg.T},
                                       {"supply_rule", bm::to_string(cfg.supply_rule)},
                                       {"significant_digits", cfg.digits},
                                       {"spec", {{"beta", spec.beta}, {"blocks", std::move(blocks)}, {"noise_sd", spec.noise_sd}}},
                                       {"variables", levels.variables()}}));
    finish(inv, w);
    std::cout << fmt::format("simulated {} days of {} into {}\n", cfg.T, fmt::join(levels.variables(), ", "),
                             (w.dir() / "simulated.csv").string());
    return 0;
}

int cmd_corr(const Invocation& inv) {
    const auto& cfg = inv.config;
    const auto data = load_all(cfg);
    std::vector<std::string> names;
    if (cfg.variables.empty()) {
        for (const auto& s : data.series) names.push_back(s.name());
        names = registry_order(names);
    } else {
        names = cfg.variables;
    }
    OutputWriter w(cfg.out);
    write_correlation(cfg, w, "correlation", pick(data.series, names));
    finish(inv, w);
    if (cfg.wants("text")) {
        std::cout << "correlation written to " << (w.dir() / "correlation.txt").string() << "\n";
    }
    return 0;
}

}  // namespace repcli
