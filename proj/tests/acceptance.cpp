// Acceptance run: one PASS / FAIL / SKIP line per criterion.

#include <fmt/format.h>
#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "coinecon/diagnostics.hpp"
#include "coinecon/errors.hpp"
#include "coinecon/johansen.hpp"
#include "coinecon/json_export.hpp"
#include "coinecon/model_catalog.hpp"
#include "coinecon/render.hpp"
#include "coinecon/unit_root.hpp"
#include "coinecon/vecm.hpp"
#include "support/fixtures.hpp"
#include "support/render_fixture.hpp"

namespace fs = std::filesystem;
using namespace coinecon;

namespace {

enum class Verdict { pass, fail, skip };

struct Outcome {
    Verdict verdict = Verdict::fail;
    std::string detail;
};

Outcome verdict(bool ok, std::string detail) { return {ok ? Verdict::pass : Verdict::fail, std::move(detail)}; }

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<double> as_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

// 1. Unit-root size and power.
Outcome unit_root_size_power() {
    const auto start = std::chrono::steady_clock::now();
    const auto det = UnitRootDeterministic::constant;
    int adf_keep = 0, pp_keep = 0, adf_reject = 0, pp_reject = 0;
    const int runs = 500;
    for (int seed = 0; seed < runs; ++seed) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
        const auto walk = as_vector(fixtures::random_walk(1000, rng));
        const auto noise = as_vector(fixtures::gaussian(1000, 1, rng).col(0));
        for (const auto* y : {&walk, &noise}) {
            const auto lags = unit_root::select_lags_aic(*y, unit_root::default_max_lags(y->size()), det);
            const bool adf = unit_root::adf_test(*y, det, lags).reject_unit_root.p05;
            const bool pp = unit_root::pp_test(*y, det).reject_unit_root.p05;
            if (y == &walk) {
                adf_keep += adf ? 0 : 1;
                pp_keep += pp ? 0 : 1;
            } else {
                adf_reject += adf ? 1 : 0;
                pp_reject += pp ? 1 : 0;
            }
        }
    }
    const double secs = seconds_since(start);
    const auto rate = [&](int c) { return static_cast<double>(c) / runs; };
    const bool ok = rate(adf_keep) >= 0.92 && rate(adf_keep) <= 0.98 && rate(pp_keep) >= 0.92 &&
                    rate(pp_keep) <= 0.98 && rate(adf_reject) > 0.99 && rate(pp_reject) > 0.99 && secs < 60.0;
    return verdict(ok, fmt::format("random walks not rejected ADF {:.3f} PP {:.3f} (need [0.92, 0.98]); "
                                   "iid rejected ADF {:.3f} PP {:.3f} (need > 0.99); {:.1f} s (budget 60 s)",
                                   rate(adf_keep), rate(pp_keep), rate(adf_reject), rate(pp_reject), secs));
}

// 2. Johansen rank recovery.
Outcome rank_recovery() {
    const auto start = std::chrono::steady_clock::now();
    const int runs = 200;
    int rank_one = 0, rank_zero = 0;
    for (int seed = 0; seed < runs; ++seed) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
        const auto coint = fixtures::make_panel(fixtures::bivariate_cointegrated(500, rng));
        const auto walks = fixtures::make_panel(fixtures::independent_walks(500, 2, rng));
        const auto c = DeterministicCase::restricted_constant;
        if (johansen::rank_decision(johansen::concentrate(coint, 1, c), Significance::p05).selected_rank == 1) ++rank_one;
        if (johansen::rank_decision(johansen::concentrate(walks, 1, c), Significance::p05).selected_rank == 0) ++rank_zero;
    }
    const double secs = seconds_since(start);
    const double r1 = static_cast<double>(rank_one) / runs, r0 = static_cast<double>(rank_zero) / runs;
    return verdict(r1 >= 0.85 && r0 >= 0.90 && secs < 120.0,
                   fmt::format("rank 1 on the cointegrated DGP {:.3f} (need >= 0.85); rank 0 on independent walks "
                               "{:.3f} (need >= 0.90); {:.1f} s (budget 120 s)",
                               r1, r0, secs));
}

// 3. VECM parameter recovery and the likelihood cross-check.
Outcome parameter_recovery() {
    std::vector<double> beta2, alpha1, alpha2;
    double worst_ll = 0.0;
    for (int seed = 0; seed < 200; ++seed) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
        const auto p = fixtures::make_panel(fixtures::bivariate_cointegrated(500, rng));
        const auto fit = vecm::estimate_vecm(p, 1, 1, DeterministicCase::restricted_constant);
        beta2.push_back(fit.beta(1, 0));
        alpha1.push_back(fit.alpha(0, 0));
        alpha2.push_back(fit.alpha(1, 0));
        worst_ll = std::max(worst_ll, std::abs(fit.log_likelihood - vecm::eigenvalue_log_likelihood(fit)));
    }
    const double b = fixtures::median(beta2), a1 = fixtures::median(alpha1), a2 = fixtures::median(alpha2);
    const auto ta = fixtures::true_alpha();
    const bool ok = b >= -2.1 && b <= -1.9 && std::abs(a1 - ta(0)) <= 0.1 && std::abs(a2 - ta(1)) <= 0.1 &&
                    worst_ll < 1e-6;
    return verdict(ok, fmt::format("median beta2 {:.4f} (need [-2.1, -1.9]); median alpha ({:.4f}, {:.4f}) vs "
                                   "(-0.5, 0.1) within 0.1; worst log-likelihood gap {:.2e} (need < 1e-6)",
                                   b, a1, a2, worst_ll));
}

// 4. Exact statistic identities on random fixtures.
Outcome identities() {
    const std::vector<DeterministicCase> cases{DeterministicCase::none, DeterministicCase::restricted_constant,
                                               DeterministicCase::unrestricted_constant,
                                               DeterministicCase::restricted_trend,
                                               DeterministicCase::unrestricted_trend};
    double trace_gap = 0.0, pi_gap = 0.0, pp_gap = 0.0;
    for (int f = 0; f < 50; ++f) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(1000 + f));
        const int n = 2 + f % 3;
        const int k = 1 + (f / 3) % 3;
        const auto c = cases[static_cast<std::size_t>(f) % cases.size()];
        // Random alpha shifted along beta so that beta'alpha = -0.4 (one stationary root at 0.6).
        Eigen::VectorXd beta = Eigen::VectorXd::Ones(n);
        beta(n - 1) = -1.0;
        Eigen::VectorXd alpha = 0.3 * fixtures::gaussian(n, 1, rng).col(0);
        alpha -= beta * ((beta.dot(alpha) + 0.4) / beta.squaredNorm());
        const auto p = fixtures::make_panel(fixtures::simulate_vecm(300, alpha * beta.transpose(), rng));
        const auto e = johansen::concentrate(p, k, c);
        for (int r = 0; r < n; ++r) {
            double sum = 0.0;
            for (int j = r; j < n; ++j) sum += johansen::max_eigen_statistic(e, j);
            trace_gap = std::max(trace_gap, std::abs(johansen::trace_statistic(e, r) - sum));
        }
        const int rank = 1 + f % (n - 1);
        const auto fit = vecm::fit_at_rank(e, rank);
        const auto a = diagnostics::level_var_coefficients(fit);
        Eigen::MatrixXd implied = -Eigen::MatrixXd::Identity(n, n);
        for (const auto& ai : a) implied += ai;
        const Eigen::MatrixXd ab = fit.alpha * fit.beta.topRows(n).transpose();
        pi_gap = std::max(pi_gap, (ab - implied).cwiseAbs().maxCoeff());

        const auto y = as_vector(p.data().col(0));
        for (auto d : {UnitRootDeterministic::none, UnitRootDeterministic::constant, UnitRootDeterministic::constant_trend}) {
            pp_gap = std::max(pp_gap, std::abs(unit_root::pp_test(y, d, 0).statistic -
                                               unit_root::adf_test(y, d, 0).statistic));
        }
    }
    return verdict(trace_gap < 1e-10 && pi_gap < 1e-10 && pp_gap < 1e-10,
                   fmt::format("50 fixtures: trace vs summed max-eigen {:.2e}; alpha beta' vs implied Pi {:.2e}; "
                               "PP(0) vs ADF(0) {:.2e} (each need < 1e-10)",
                               trace_gap, pi_gap, pp_gap));
}

// 5. End to end through the CLI.
std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int shell(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::optional<std::map<std::string, double>> cli_long_run(const fs::path& dir, int seed, double noise) {
    const auto run = dir / fmt::format("seed{}_noise{}", seed, noise);
    fs::create_directories(run);
    const std::string cli = REPCLI_PATH;
    const auto q = [](const fs::path& p) { return "'" + p.string() + "'"; };
    if (shell(fmt::format("{} --out {} simulate --seed {} --noise-sd {} > /dev/null 2>&1", q(cli), q(run / "sim"),
                          seed, noise)) != 0) {
        return std::nullopt;
    }
    if (shell(fmt::format("{} --out {} replicate --models 1.1 {} > /dev/null 2>&1", q(cli), q(run / "rep"),
                          q(run / "sim/simulated.csv"))) != 0) {
        return std::nullopt;
    }
    const auto j = json_export::Json::parse(slurp(run / "rep/results.json"));
    const auto& m = j["models"][0];
    if (!m.contains("tables") || m["tables"].is_null()) return std::nullopt;
    std::map<std::string, double> out;
    for (const auto& [name, cell] : m["tables"]["long_run"].items()) out[name] = cell["value"].get<double>();
    return out;
}

Outcome end_to_end() {
    const auto dir = fs::temp_directory_path() / fmt::format("coinecon_acceptance_{}", ::getpid());
    fs::remove_all(dir);
    const std::map<std::string, double> expected{{"exrate", 1.0}, {"ntran", 1.0}, {"bcdde", -1.0}, {"totbc", -1.0}};
    int signs = 0, within = 0;
    std::string shown;
    const int seeds = 5;
    for (int seed = 1; seed <= seeds; ++seed) {
        if (const auto lr = cli_long_run(dir, seed, 0.0)) {
            bool ok = true;
            for (const auto& [v, e] : expected) ok = ok && lr->count(v) != 0 && lr->at(v) * e > 0.0;
            signs += ok ? 1 : 0;
        }
        if (const auto lr = cli_long_run(dir, seed, 0.01)) {
            bool ok = true;
            for (const auto& [v, e] : expected) ok = ok && lr->count(v) != 0 && std::abs(lr->at(v) - e) <= 0.1;
            within += ok ? 1 : 0;
            shown += fmt::format(" [{}: exrate {:.2f} ntran {:.2f} bcdde {:.2f} totbc {:.2f}]", seed,
                                 lr->count("exrate") ? lr->at("exrate") : NAN, lr->count("ntran") ? lr->at("ntran") : NAN,
                                 lr->count("bcdde") ? lr->at("bcdde") : NAN, lr->count("totbc") ? lr->at("totbc") : NAN);
        }
    }
    fs::remove_all(dir);
    return verdict(signs == seeds && within * 2 > seeds,
                   fmt::format("noiseless signs (+exrate +ntran -bcdde -totbc) on {}/{} seeds (need all); noise 0.01 "
                               "within 10% of (1, 1, -1, -1) on {}/{} seeds (need a majority);{}",
                               signs, seeds, within, seeds, shown));
}

// 6. Diagnostics calibration.
Outcome diagnostics_calibration() {
    int lm_reject = 0, jb_reject = 0;
    const int runs = 500;
    for (int seed = 0; seed < runs; ++seed) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
        const auto p = fixtures::make_panel(fixtures::bivariate_cointegrated(500, rng));
        const auto fit = vecm::estimate_vecm(p, 2, 1, DeterministicCase::restricted_constant);
        if (diagnostics::lm_autocorrelation(fit, 1)[0].p_value < 0.05) ++lm_reject;
        if (diagnostics::jarque_bera(fit)[0].p_value < 0.05) ++jb_reject;
    }
    const double lm = static_cast<double>(lm_reject) / runs, jb = static_cast<double>(jb_reject) / runs;

    // Stable: beta'alpha = -0.5 puts the stationary root at 0.5. Explosive: a diagonal root at 1.05.
    std::mt19937_64 rng(7);
    const Eigen::Vector2d beta(1.0, -2.0);
    const Eigen::Vector2d alpha = Eigen::Vector2d(0.5, -0.25) * (-0.5 / beta.dot(Eigen::Vector2d(0.5, -0.25)));
    const auto stable_fit = vecm::estimate_vecm(
        fixtures::make_panel(fixtures::simulate_vecm(2000, alpha * beta.transpose(), rng)), 1, 1,
        DeterministicCase::restricted_constant);
    const bool stable_ok = diagnostics::stability(stable_fit).stable;
    const Eigen::Matrix2d pi = Eigen::Vector2d(0.05, -0.5).asDiagonal();
    const auto e = johansen::concentrate(fixtures::make_panel(fixtures::simulate_vecm(200, pi, rng, {}, {}, 0)), 1,
                                         DeterministicCase::unrestricted_constant);
    const bool explosive_flagged = !diagnostics::stability(vecm::fit_at_rank(e, 2)).stable;
    return verdict(lm >= 0.02 && lm <= 0.08 && jb >= 0.02 && jb <= 0.08 && stable_ok && explosive_flagged,
                   fmt::format("LM size {:.3f}, JB size {:.3f} (need [0.02, 0.08]); stable DGP {}; explosive DGP {}",
                               lm, jb, stable_ok ? "passes" : "fails", explosive_flagged ? "fails" : "passes"));
}

// 7. Catalog grid and table conventions.
std::map<std::string, std::set<std::string>> read_grid() {
    std::ifstream in(COINECON_SOURCE_DIR "/tests/fixtures/table1_grid.tsv");
    const std::map<std::string, std::string> alias{{"extrate", "exrate"}, {"new_member", "new_members"}};
    std::string line;
    std::getline(in, line);
    std::vector<std::string> ids;
    std::istringstream h(line);
    std::string cell;
    std::getline(h, cell, '\t');
    while (std::getline(h, cell, '\t')) ids.push_back(cell);
    std::map<std::string, std::set<std::string>> out;
    for (const auto& id : ids) out[id].insert("mkpru");
    while (std::getline(in, line)) {
        std::istringstream r(line);
        std::string name;
        std::getline(r, name, '\t');
        if (alias.count(name) != 0) name = alias.at(name);
        for (std::size_t i = 0; std::getline(r, cell, '\t') && i < ids.size(); ++i) {
            if (cell == "x") out[ids[i]].insert(name);
        }
    }
    return out;
}

Outcome structural_targets() {
    const auto grid = read_grid();
    int matched = 0;
    for (const auto& spec : catalog::catalog()) {
        const std::set<std::string> vars(spec.variables.begin(), spec.variables.end());
        if (grid.count(spec.id) != 0 && grid.at(spec.id) == vars && vars.size() == spec.variables.size()) ++matched;
    }
    const bool catalog_ok = matched == 16 && grid.size() == 16 && catalog::catalog().size() == 16;

    using vecm::make_cell;
    const bool stars_ok = render::format_cell(make_cell(2.6, 1.0), 2, false) == "2.60***" &&
                          render::format_cell(make_cell(2.0, 1.0), 2, false) == "2.00**" &&
                          render::format_cell(make_cell(1.7, 1.0), 2, false) == "1.70*" &&
                          render::format_cell(make_cell(1.6, 1.0), 2, false) == "-" &&
                          render::format_cell(make_cell(1.6, 1.0), 2, true) == "1.60";
    const auto results = render_fixture::two_models();
    render::RenderOptions csv;
    csv.format = render::Format::csv;
    const auto a = render::render_tables(results, render::TableKind::short_run, csv);
    const auto b = render::render_tables(results, render::TableKind::short_run, csv);
    const auto t1 = render::render_tables(results, render::TableKind::long_run, {}, "Long-run effects");
    const auto t2 = render::render_tables(results, render::TableKind::long_run, {}, "Long-run effects");
    const bool layout_ok = a.find("LD.mkpru,0.147***,0.200**\n") != std::string::npos &&
                           a.find("LD.ntran,0.050*,-\n") != std::string::npos &&
                           t1.find("-77.35***") != std::string::npos;
    const bool stable = a == b && t1 == t2;
    return verdict(catalog_ok && stars_ok && layout_ok && stable,
                   fmt::format("catalog matches the grid on {}/16 models; star and dash rules {}; layout {}; "
                               "byte-stable {}",
                               matched, stars_ok ? "ok" : "wrong", layout_ok ? "ok" : "wrong", stable ? "yes" : "no"));
}

// 8. Original data, when supplied.
Outcome original_data() {
    const char* env = std::getenv("COINECON_ORIGINAL_DATA");
    if (env == nullptr || *env == '\0') {
        return {Verdict::skip, "set COINECON_ORIGINAL_DATA to a CSV file, a comma list of files or a directory"};
    }
    std::vector<fs::path> files;
    std::string list = env;
    for (std::size_t pos = 0; pos <= list.size();) {
        const auto comma = std::min(list.find(',', pos), list.size());
        const fs::path p = list.substr(pos, comma - pos);
        if (fs::is_directory(p)) {
            for (const auto& entry : fs::directory_iterator(p)) {
                if (entry.path().extension() == ".csv") files.push_back(entry.path());
            }
        } else if (!p.empty()) {
            files.push_back(p);
        }
        pos = comma + 1;
    }
    std::sort(files.begin(), files.end());
    try {
        std::vector<series::TimeSeries> all;
        for (const auto& f : files) {
            auto loaded = series::load_csv(f);
            for (auto& s : loaded.series) all.push_back(std::move(s));
        }
        const auto pick = [&](const std::vector<std::string>& names) {
            std::vector<series::TimeSeries> out;
            for (const auto& n : names) {
                const auto it = std::find_if(all.begin(), all.end(), [&](const auto& s) { return s.name() == n; });
                if (it == all.end()) throw InputError("original data lacks " + n);
                out.push_back(*it);
            }
            return out;
        };
        const auto policy = series::AlignmentPolicy::forward_fill_macro;
        const auto corr = series::correlation_matrix(series::align(pick({"ntran", "totbc", "naddu"}), policy));
        const double c1 = corr.values(0, 1), c2 = corr.values(1, 2);
        const bool corr_ok = std::abs(c1 - 0.92) <= 0.02 && std::abs(c2 - 0.95) <= 0.02;

        std::string signs;
        bool signs_ok = true;
        for (const char* id : {"1.2", "1.3"}) {
            const auto& spec = catalog::find_model(id);
            const auto r = catalog::run_model(spec, series::align(pick(spec.variables), policy));
            std::map<std::string, double> lr;
            if (r.has_long_run()) {
                for (const auto& c : r.tables->long_run) lr[c.regressor] = c.cell.value;
            }
            const bool ok = r.has_long_run() && lr["totbc"] < 0 && lr["bcdde"] > 0 &&
                            (spec.variables.size() < 5 || lr["naddu"] > 0);
            signs_ok = signs_ok && ok;
            signs += fmt::format(" {} {}", id, ok ? "ok" : "differs");
        }
        return verdict(corr_ok && signs_ok,
                       fmt::format("corr(ntran, totbc) {:.3f} (0.92 +/- 0.02), corr(totbc, naddu) {:.3f} "
                                   "(0.95 +/- 0.02); long-run signs:{}",
                                   c1, c2, signs));
    } catch (const std::exception& e) {
        return {Verdict::fail, std::string("could not use the supplied data: ") + e.what()};
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"unit-root size and power", unit_root_size_power},
        {"Johansen rank recovery", rank_recovery},
        {"VECM parameter recovery", parameter_recovery},
        {"statistic identities", identities},
        {"end-to-end simulate and replicate", end_to_end},
        {"diagnostics calibration", diagnostics_calibration},
        {"catalog and table conventions", structural_targets},
        {"original-data checks", original_data},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {Verdict::fail, std::string("exception: ") + e.what()};
        }
        const char* tag = o.verdict == Verdict::pass ? "PASS" : o.verdict == Verdict::skip ? "SKIP" : "FAIL";
        if (o.verdict == Verdict::fail) ++failed;
        fmt::print("criterion {} {}: {} ({:.1f} s): {}\n", i + 1, tag, criteria[i].first, seconds_since(start),
                   o.detail);
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
