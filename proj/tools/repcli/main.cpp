// repcli: unit-root, cointegration and VECM runs over daily coin-market data.
#include <CLI11.hpp>
#include <fmt/format.h>

#include <functional>
#include <iostream>
#include <map>

#include "coinecon/errors.hpp"
#include "commands.hpp"
#include "config.hpp"

namespace {

struct Binding {
    CLI::Option* option;
    std::string key;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Replication runs: ingest, unit roots, Johansen, VECM, model catalog, simulation."};
    app.require_subcommand(1);
    app.fallthrough();

    // Stable storage: std::map nodes never move.
    std::map<std::string, std::string> values;
    std::vector<std::string> data_files;
    std::vector<Binding> bindings;
    bool full = false;
    bool plot_data = false;
    std::string config_path;

    auto opt = [&](CLI::App* a, const std::string& flag, const std::string& key, const std::string& help) {
        bindings.push_back({a->add_option(flag, values[key], help), key});
    };

    app.add_option("--config", config_path, "flat key = value config file (flags override it)");
    opt(&app, "--level", "level", "significance level: 0.01, 0.05 or 0.10");
    opt(&app, "--alignment", "alignment", "intersect_drop or forward_fill_macro");
    opt(&app, "--out", "out", "output directory");
    opt(&app, "--format", "format", "comma list of text, csv, json");

    auto* ingest = app.add_subcommand("ingest", "load and validate CSV files, write a series cache");
    auto* unitroot = app.add_subcommand("unitroot", "ADF and PP tests in levels and first differences");
    auto* johansen = app.add_subcommand("johansen", "Johansen rank test for one system");
    auto* vecm = app.add_subcommand("vecm", "estimate a VECM with inference and diagnostics");
    auto* replicate = app.add_subcommand("replicate", "run the model catalog and write the table documents");
    auto* simulate = app.add_subcommand("simulate", "write a synthetic economy in the ingestion schema");
    auto* corr = app.add_subcommand("corr", "correlation matrix of the loaded series");

    for (auto* sub : {ingest, unitroot, johansen, vecm, replicate, corr}) {
        sub->add_option("--data,files", data_files, "CSV data files");
    }
    for (auto* sub : {unitroot, johansen, vecm, corr}) {
        opt(sub, "--variables", "variables", "comma list of variables (price first for systems)");
    }
    for (auto* sub : {unitroot, johansen, vecm, replicate}) {
        opt(sub, "--deterministic", "deterministic", "unit-root terms: none, constant, trend");
        opt(sub, "--unit-root-max-lags", "unit_root_max_lags", "ADF lag ceiling (default Schwert rule)");
    }
    opt(unitroot, "--transform", "transform", "log or level");
    for (auto* sub : {johansen, vecm, replicate}) {
        opt(sub, "--models", "models", "model ids or all");
        opt(sub, "--max-lags", "max_lags", "AIC ceiling for the VAR lag order");
        opt(sub, "--lags", "lags", "fix the VAR lag order k");
        opt(sub, "--case", "case", "deterministic case (default: Pantula selection)");
    }
    opt(replicate, "--variables", "variables", "custom model, price first");
    opt(vecm, "--rank", "rank", "cointegrating rank (default: trace-test choice)");
    for (auto* sub : {vecm, replicate}) {
        opt(sub, "--lm-lags", "lm_lags", "LM autocorrelation lags");
        sub->add_flag("--full", full, "print every coefficient, ignoring the dash rule");
    }
    opt(replicate, "--threads", "threads", "worker threads (0 = hardware)");
    opt(replicate, "--corr-transform", "corr_transform", "correlations on level or log");
    opt(corr, "--corr-transform", "corr_transform", "correlations on level or log");
    replicate->add_flag("--plot-data", plot_data, "also write a (date, price) CSV");
    opt(simulate, "--seed", "seed", "random seed");
    opt(simulate, "-T,--length", "T", "number of days");
    opt(simulate, "--noise-sd", "noise_sd", "sd of the price-equation error");
    opt(simulate, "--supply-rule", "supply_rule", "fixed_schedule or constant");
    opt(simulate, "--blocks", "blocks", "fundamentals[,attractiveness][,macro]");
    opt(simulate, "--digits", "digits", "significant digits written per value");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    const std::map<CLI::App*, std::function<int(const repcli::Invocation&)>> commands{
        {ingest, repcli::cmd_ingest},       {unitroot, repcli::cmd_unitroot}, {johansen, repcli::cmd_johansen},
        {vecm, repcli::cmd_vecm},           {replicate, repcli::cmd_replicate}, {simulate, repcli::cmd_simulate},
        {corr, repcli::cmd_corr}};

    try {
        repcli::KeyValues flags;
        for (const auto& b : bindings) {
            if (b.option->count() > 0) flags[b.key] = values[b.key];
        }
        if (!data_files.empty()) {
            std::string joined;
            for (const auto& f : data_files) joined += (joined.empty() ? "" : ",") + f;
            flags["data"] = joined;
        }
        if (full) flags["full"] = "true";
        if (plot_data) flags["plot_data"] = "true";
        const auto file = config_path.empty() ? repcli::KeyValues{} : repcli::read_config_file(config_path);

        repcli::Invocation inv;
        inv.effective = repcli::merge(repcli::default_values(), file, flags);
        inv.config = repcli::to_config(inv.effective);
        for (const auto& [sub, run] : commands) {
            if (sub->parsed()) {
                inv.command = sub->get_name();
                return run(inv);
            }
        }
        return 1;
    } catch (const coinecon::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const coinecon::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const coinecon::StageError& e) {
        std::cerr << "stage failure: " << e.what() << "\n";
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 2;
    }
}
