#include "coinecon/model_catalog.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "coinecon/errors.hpp"
#include "coinecon/regression.hpp"

namespace coinecon::catalog {

namespace {

using barro::Block;

std::set<Block> derive_blocks(const std::vector<std::string>& variables) {
    std::set<Block> tags;
    for (const auto& v : variables) {
        if (v == kPriceVariable) continue;
        const auto it = std::find_if(registry().begin(), registry().end(),
                                     [&](const VariableInfo& info) { return info.name == v; });
        if (it != registry().end()) tags.insert(it->block);
    }
    return tags;
}

ModelSpec make_spec(std::string id, std::vector<std::string> variables) {
    ModelSpec s{std::move(id), std::move(variables), {}};
    s.block_tags = derive_blocks(s.variables);
    return s;
}

}  // namespace

const std::vector<VariableInfo>& registry() {
    static const std::vector<VariableInfo> vars{
        {"mkpru", Block::fundamentals, "market price (USD)"},
        {"totbc", Block::fundamentals, "total coins in circulation"},
        {"ntran", Block::fundamentals, "transactions per day"},
        {"naddu", Block::fundamentals, "unique addresses per day"},
        {"bcdde", Block::fundamentals, "coin days destroyed"},
        {"exrate", Block::fundamentals, "USD/EUR exchange rate"},
        {"wiki_views", Block::attractiveness, "daily Wikipedia views"},
        {"new_members", Block::attractiveness, "new forum members"},
        {"new_posts", Block::attractiveness, "new forum posts"},
        {"dj", Block::macro, "Dow Jones index"},
        {"oil_price", Block::macro, "oil price"},
    };
    return vars;
}

std::string ModelSpec::model_set() const {
    const auto dot = id.find('.');
    return dot == std::string::npos ? id : id.substr(0, dot);
}

const std::vector<ModelSpec>& catalog() {
    static const std::vector<ModelSpec> specs{
        make_spec("1.1", {"mkpru", "totbc", "ntran", "bcdde", "exrate"}),
        make_spec("1.2", {"mkpru", "totbc", "naddu", "bcdde", "exrate"}),
        make_spec("1.3", {"mkpru", "totbc", "bcdde", "exrate"}),
        make_spec("1.4", {"mkpru", "naddu", "bcdde", "exrate"}),
        make_spec("1.5", {"mkpru", "ntran", "bcdde", "exrate"}),
        make_spec("2.1", {"mkpru", "wiki_views", "new_members", "new_posts"}),
        make_spec("3.1", {"mkpru", "exrate", "dj", "oil_price"}),
        make_spec("4.1", {"mkpru", "exrate", "wiki_views", "dj", "oil_price"}),
        make_spec("4.2", {"mkpru", "totbc", "naddu", "bcdde", "exrate", "wiki_views", "new_members",
                          "new_posts", "dj", "oil_price"}),
        make_spec("4.3", {"mkpru", "totbc", "naddu", "bcdde", "wiki_views", "new_members", "new_posts",
                          "dj"}),
        make_spec("4.4", {"mkpru", "naddu", "bcdde", "wiki_views", "new_posts"}),
        make_spec("4.5", {"mkpru", "totbc", "bcdde", "new_members", "new_posts"}),
        make_spec("4.6", {"mkpru", "bcdde", "wiki_views", "new_members", "new_posts"}),
        make_spec("4.7", {"mkpru", "naddu", "bcdde", "new_posts"}),
        make_spec("4.8", {"mkpru", "ntran", "bcdde", "wiki_views", "new_members", "new_posts"}),
        make_spec("4.9", {"mkpru", "ntran", "bcdde", "new_members", "new_posts"}),
    };
    return specs;
}

const ModelSpec& find_model(const std::string& id) {
    for (const auto& s : catalog()) {
        if (s.id == id) return s;
    }
    throw InputError(fmt::format("unknown model id '{}'", id));
}

ModelSpec custom_spec(std::string id, std::vector<std::string> variables) {
    if (variables.size() < 2) throw InputError("custom model needs at least two variables");
    if (variables.front() != kPriceVariable) {
        throw InputError(fmt::format("custom model must list {} first", kPriceVariable));
    }
    for (std::size_t i = 0; i < variables.size(); ++i) {
        if (std::find(variables.begin(), variables.begin() + static_cast<std::ptrdiff_t>(i),
                      variables[i]) != variables.begin() + static_cast<std::ptrdiff_t>(i)) {
            throw InputError(fmt::format("custom model lists '{}' twice", variables[i]));
        }
    }
    return make_spec(std::move(id), std::move(variables));
}

bool PipelineResult::has_long_run() const noexcept {
    return tables.has_value() && fit.has_value() && fit->rank >= 1 &&
           fit->rank < static_cast<int>(variables.size());
}

int select_var_lag_aic(const series::Panel& log_panel, int max_lag, std::vector<double>* aic_out) {
    if (max_lag < 1) throw InputError("select_var_lag_aic: max_lag must be at least 1");
    const auto& z = log_panel.data();
    const auto total = z.rows();
    const auto n = z.cols();
    const auto t_eff = total - max_lag;
    if (t_eff <= n * max_lag + 1 + 10) {
        throw InputError(fmt::format("select_var_lag_aic: T = {} too short for ceiling {}", total, max_lag));
    }
    const Eigen::MatrixXd y = z.bottomRows(t_eff);
    int best = 1;
    double best_aic = std::numeric_limits<double>::infinity();
    if (aic_out != nullptr) aic_out->clear();
    for (int k = 1; k <= max_lag; ++k) {
        Eigen::MatrixXd x(t_eff, n * k + 1);
        for (int lag = 1; lag <= k; ++lag) x.middleCols((lag - 1) * n, n) = z.middleRows(max_lag - lag, t_eff);
        x.col(n * k).setOnes();
        regression::OlsFit fit;
        try {
            fit = regression::ols(x, y);
        } catch (const NumericalError&) {
            // Longer lags of a near-deterministic series only add collinear columns.
            if (k == 1) throw;
            break;
        }
        const Eigen::MatrixXd sigma = fit.residuals.transpose() * fit.residuals / static_cast<double>(t_eff);
        Eigen::LLT<Eigen::MatrixXd> llt(sigma);
        if (llt.info() != Eigen::Success) {
            throw NumericalError(fmt::format("select_var_lag_aic: singular residual covariance at k = {}", k));
        }
        const Eigen::MatrixXd l = llt.matrixL();
        const double log_det = 2.0 * l.diagonal().array().log().sum();
        const double aic = log_det + 2.0 * static_cast<double>(n * n * k + n) / static_cast<double>(t_eff);
        if (aic_out != nullptr) aic_out->push_back(aic);
        if (aic < best_aic) {
            best_aic = aic;
            best = k;
        }
    }
    return best;
}

PipelineResult run_model(const ModelSpec& spec, const series::Panel& levels,
                         const PipelineOptions& options) {
    for (const auto& v : spec.variables) {
        if (!levels.has(v)) {
            throw InputError(fmt::format("model {}: panel lacks variable '{}'", spec.id, v));
        }
    }
    PipelineResult out;
    out.model_id = spec.id;
    out.variables = spec.variables;
    out.block_tags = spec.block_tags;
    out.provenance.alignment_policy = levels.alignment_policy();
    out.provenance.level = options.level;

    const auto logs = series::log_transform(levels.select(spec.variables));
    const auto n = static_cast<int>(logs.cols());

    auto fail = [&](std::string stage, std::string reason) {
        out.failures.push_back({std::move(stage), std::move(reason)});
        return out;
    };

    // Step 1: orders of integration.
    // A series with no stochastic component (a fixed issuance schedule, say) makes the
    // ADF regression singular; it is kept in the system as indeterminate.
    int i1_count = 0;
    for (const auto& v : spec.variables) {
        try {
            auto order = unit_root::classify_integration(logs.series(v), options.unit_root_deterministic,
                                                         options.unit_root_max_lags);
            if (order.order == unit_root::Order::I1) ++i1_count;
            out.integration.push_back(std::move(order));
        } catch (const NumericalError& e) {
            unit_root::IntegrationOrder order;
            order.variable = v;
            out.integration.push_back(std::move(order));
            out.warnings.push_back(fmt::format("{}: unit-root test not computable ({}); treated as indeterminate", v, e.what()));
        }
    }
    if (i1_count == 0) return fail("integration", "no unit roots; cointegration not applicable");
    if (i1_count < 2) return fail("integration", "fewer than two I(1) variables; cointegration not applicable");

    // Step 2: lag order and rank.
    int k = 0;
    try {
        if (options.lag_order) {
            k = *options.lag_order;
        } else {
            int ceiling = options.max_var_lags;
            while (ceiling > 1 && logs.rows() <= static_cast<Eigen::Index>(n) * (ceiling + 1) + n + 11) --ceiling;
            k = select_var_lag_aic(logs, ceiling, &out.lag_aic);
        }
    } catch (const NumericalError& e) {
        return fail("lag_selection", e.what());
    }
    out.provenance.k = k;
    if (k > kWarnAboveK) {
        out.warnings.push_back(fmt::format("k = {} exceeds the usual range (k <= {})", k,
                                           kWarnAboveK));
    }

    johansen::EigenAnalysis analysis;
    try {
        if (options.deterministic) {
            analysis = johansen::concentrate(logs, k, *options.deterministic);
            out.rank = johansen::rank_decision(analysis, options.level);
        } else {
            out.pantula = johansen::pantula_select(logs, k, options.level);
            out.rank = out.pantula->rank;
            analysis = johansen::concentrate(logs, k, out.pantula->deterministic);
        }
    } catch (const NumericalError& e) {
        return fail("rank", e.what());
    }
    out.provenance.deterministic = out.rank->deterministic;
    for (const auto& w : analysis.warnings) out.warnings.push_back(w);
    const int r = out.rank->selected_rank;

    // Step 3: error-correction model.
    try {
        auto fit = vecm::fit_at_rank(analysis, r);
        if (r >= 1 && r < n) fit = vecm::normalize_long_run(fit, spec.variables.front());
        out.tables = vecm::inference(fit);
        out.fit = std::move(fit);
    } catch (const NumericalError& e) {
        return fail("vecm", e.what());
    }
    if (r == n) out.warnings.push_back("full rank: the system is stationary in levels; no long-run table");

    try {
        out.diagnostics = diagnostics::run_diagnostics(*out.fit, options.lm_max_lag);
    } catch (const std::exception& e) {
        out.failures.push_back({"diagnostics", e.what()});
    }
    if (out.has_long_run()) out.sign_check = barro::sign_expectation_check(*out.tables, spec.block_tags);
    if (r == 0) out.failures.push_back({"rank", "rank 0: no cointegration; difference VAR reported"});
    return out;
}

std::vector<PipelineResult> run_models(const std::vector<ModelSpec>& specs, const series::Panel& levels,
                                       const PipelineOptions& options, unsigned threads) {
    std::vector<PipelineResult> results(specs.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(specs.size(), 1)));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < specs.size(); i = next++) {
            try {
                results[i] = run_model(specs[i], levels, options);
            } catch (const std::exception& e) {
                results[i].model_id = specs[i].id;
                results[i].variables = specs[i].variables;
                results[i].block_tags = specs[i].block_tags;
                results[i].failures.push_back({"input", e.what()});
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return results;
}

}  // namespace coinecon::catalog
