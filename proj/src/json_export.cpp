#include "coinecon/json_export.hpp"

namespace coinecon::json_export {

namespace {

Json levels(const LevelMap<double>& m) {
    return Json{{"0.10", m.p10}, {"0.05", m.p05}, {"0.01", m.p01}};
}

Json levels(const LevelMap<bool>& m) {
    return Json{{"0.10", m.p10}, {"0.05", m.p05}, {"0.01", m.p01}};
}

Json named_cells(const std::vector<vecm::NamedCell>& cells) {
    Json out = Json::object();
    for (const auto& c : cells) out[c.regressor] = to_json(c.cell);
    return out;
}

}  // namespace

Json matrix_to_json(const Eigen::MatrixXd& m) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        out.push_back(std::move(row));
    }
    return out;
}

Json to_json(const series::LoadReport& r) {
    Json series = Json::array();
    for (const auto& s : r.series) {
        series.push_back({{"name", s.name},
                          {"first_date", series::format_date(s.first_date)},
                          {"last_date", series::format_date(s.last_date)},
                          {"n", s.n}});
    }
    return Json{{"source", r.source}, {"rows_read", r.rows_read}, {"rows_dropped", r.rows_dropped},
                {"series", std::move(series)}};
}

Json to_json(const unit_root::UnitRootResult& r) {
    return Json{{"test", unit_root::to_string(r.test)},
                {"statistic", r.statistic},
                {r.test == unit_root::TestKind::adf ? "lags" : "bandwidth", r.lags_or_bandwidth},
                {"deterministic", to_string(r.deterministic)},
                {"sample_size", r.sample_size},
                {"critical_values", levels(r.critical_values)},
                {"reject_unit_root", levels(r.reject_unit_root)}};
}

Json to_json(const unit_root::IntegrationOrder& o) {
    return Json{{"variable", o.variable},
                {"order", unit_root::to_string(o.order)},
                {"level", to_json(o.level_result)},
                {"difference", to_json(o.diff_result)}};
}

Json to_json(const johansen::CointRankResult& r) {
    Json steps = Json::array();
    for (const auto& s : r.decision_trail) {
        steps.push_back({{"r", s.r},
                         {"trace", s.trace},
                         {"trace_cv", s.trace_cv},
                         {"trace_rejected", s.trace_rejected},
                         {"max_eigen", s.max_eigen},
                         {"max_eigen_cv", s.max_eigen_cv},
                         {"max_eigen_rejected", s.max_eigen_rejected}});
    }
    return Json{{"deterministic", to_string(r.deterministic)},
                {"level", to_probability(r.level)},
                {"effective_T", r.effective_T},
                {"eigenvalues", r.eigenvalues},
                {"selected_rank", r.selected_rank},
                {"max_eigen_rank", r.max_eigen_rank},
                {"steps", std::move(steps)}};
}

Json to_json(const johansen::PantulaResult& r) {
    Json trail = Json::array();
    for (const auto& s : r.trail) {
        trail.push_back({{"r", s.r},
                         {"deterministic", to_string(s.deterministic)},
                         {"trace", s.trace},
                         {"critical_value", s.critical_value},
                         {"rejected", s.rejected}});
    }
    return Json{{"deterministic", to_string(r.deterministic)}, {"rank", r.rank.selected_rank},
                {"trail", std::move(trail)}};
}

Json to_json(const vecm::CoefficientCell& c) {
    return Json{{"value", c.value},
                {"std_error", c.std_error},
                {"t_stat", c.t_stat},
                {"stars", vecm::to_string(c.stars)},
                {"display", c.display == vecm::Display::shown ? "shown" : "dash"}};
}

Json to_json(const vecm::EffectTables& t) {
    Json short_run = Json::object();
    Json adjustment = Json::object();
    for (std::size_t i = 0; i < t.variables.size(); ++i) {
        short_run[t.variables[i]] = named_cells(t.short_run[i]);
        adjustment[t.variables[i]] = named_cells(t.adjustment[i]);
    }
    Json out{{"rank", t.rank},
             {"lag_order", t.lag_order},
             {"deterministic", to_string(t.deterministic)},
             {"normalized_on", t.normalized_on},
             {"short_run", std::move(short_run)},
             {"adjustment", std::move(adjustment)},
             {"long_run", named_cells(t.long_run)}};
    out["constant"] = t.long_run_constant ? to_json(*t.long_run_constant) : Json(nullptr);
    return out;
}

Json to_json(const vecm::VecmFit& f) {
    Json gamma = Json::array();
    for (const auto& g : f.gamma) gamma.push_back(matrix_to_json(g));
    return Json{{"variables", f.variables()},
                {"z1", f.design.z1_names},
                {"rank", f.rank},
                {"lag_order", f.lag_order},
                {"deterministic", to_string(f.deterministic)},
                {"effective_T", f.effective_T()},
                {"alpha", matrix_to_json(f.alpha)},
                {"beta", matrix_to_json(f.beta)},
                {"gamma", std::move(gamma)},
                {"unrestricted_deterministic", matrix_to_json(f.unrestricted_det)},
                {"residual_covariance", matrix_to_json(f.residual_covariance)},
                {"log_likelihood", f.log_likelihood}};
}

Json to_json(const diagnostics::DiagnosticReport& d) {
    Json lm = Json::array();
    for (const auto& e : d.lm) {
        lm.push_back({{"lag", e.lag}, {"statistic", e.statistic}, {"df", e.df}, {"p_value", e.p_value}});
    }
    Json jb = Json::array();
    for (const auto& e : d.jarque_bera) {
        jb.push_back({{"equation", e.equation},
                      {"skewness", e.skewness},
                      {"kurtosis", e.kurtosis},
                      {"statistic", e.statistic},
                      {"df", e.df},
                      {"p_value", e.p_value}});
    }
    Json verdicts = Json::object();
    for (const auto& [k, v] : d.verdicts) verdicts[k] = v ? "pass" : "fail";
    return Json{{"lm", std::move(lm)},
                {"jarque_bera", std::move(jb)},
                {"stability",
                 {{"moduli", d.stability.moduli},
                  {"unit_moduli_expected", d.stability.unit_moduli_expected},
                  {"unit_moduli_found", d.stability.unit_moduli_found},
                  {"stable", d.stability.stable}}},
                {"verdicts", std::move(verdicts)}};
}

Json to_json(const catalog::PipelineResult& r) {
    Json out{{"model_id", r.model_id}, {"variables", r.variables}};
    Json blocks = Json::array();
    for (auto b : r.block_tags) blocks.push_back(barro::to_string(b));
    out["block_tags"] = std::move(blocks);
    Json integration = Json::array();
    for (const auto& o : r.integration) integration.push_back(to_json(o));
    out["integration"] = std::move(integration);
    out["lag_aic"] = r.lag_aic;
    out["pantula"] = r.pantula ? to_json(*r.pantula) : Json(nullptr);
    out["rank"] = r.rank ? to_json(*r.rank) : Json(nullptr);
    out["fit"] = r.fit ? to_json(*r.fit) : Json(nullptr);
    out["tables"] = r.tables ? to_json(*r.tables) : Json(nullptr);
    out["diagnostics"] = r.diagnostics ? to_json(*r.diagnostics) : Json(nullptr);
    Json signs = Json::array();
    for (const auto& s : r.sign_check) {
        signs.push_back({{"variable", s.variable},
                         {"effect", s.effect},
                         {"expected", barro::to_string(s.expected)},
                         {"verdict", barro::to_string(s.verdict)}});
    }
    out["sign_check"] = std::move(signs);
    Json failures = Json::array();
    for (const auto& f : r.failures) failures.push_back({{"stage", f.stage}, {"reason", f.reason}});
    out["failures"] = std::move(failures);
    out["warnings"] = r.warnings;
    out["provenance"] = {{"alignment_policy", series::to_string(r.provenance.alignment_policy)},
                         {"k", r.provenance.k},
                         {"deterministic", r.provenance.deterministic
                                               ? Json(to_string(*r.provenance.deterministic))
                                               : Json(nullptr)},
                         {"level", to_probability(r.provenance.level)}};
    return out;
}

Json to_json(const std::vector<catalog::PipelineResult>& results) {
    Json out = Json::array();
    for (const auto& r : results) out.push_back(to_json(r));
    return out;
}

Json to_json(const series::CorrelationMatrix& c) {
    return Json{{"variables", c.variables}, {"values", matrix_to_json(c.values)}};
}

}  // namespace coinecon::json_export
