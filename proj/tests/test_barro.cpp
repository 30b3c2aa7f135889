#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "coinecon/barro_models.hpp"
#include "coinecon/errors.hpp"
#include "coinecon/johansen.hpp"
#include "support/fixtures.hpp"

using namespace coinecon;
using namespace coinecon::barro;

TEST_CASE("equilibrium price arithmetic") {
    CHECK(equilibrium_price(1, 1, 1, 1) == 1.0);
    CHECK(equilibrium_price(2, 10, 4, 5) == 1.0);
    CHECK(equilibrium_price(1, 3, 2, 2.0) == doctest::Approx(0.75));
    CHECK_THROWS_AS((void)equilibrium_price(0, 1, 1, 1), InputError);
    CHECK_THROWS_AS((void)equilibrium_price(1, 1, -1, 1), InputError);
}

TEST_CASE("equilibrium price homogeneity") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.01, 100.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double P = u(rng), Y = u(rng), V = u(rng), B = u(rng), s = u(rng);
        const double base = equilibrium_price(P, Y, V, B);
        CHECK(std::abs(equilibrium_price(s * P, s * Y, V, B) - s * s * base) <= 1e-12 * s * s * base);
        CHECK(std::abs(equilibrium_price(s * P, Y, V, B) - s * base) <= 1e-12 * s * base);
        CHECK(std::abs(equilibrium_price(P, Y, s * V, s * B) - base / (s * s)) <= 1e-12 * base / (s * s));
        CHECK(std::abs(equilibrium_price(P, Y, V, 2 * B) - base / 2) <= 1e-12 * base);
        CHECK(equilibrium_gap(equilibrium_state(P, Y, V, B)) < 1e-12);
    }
}

TEST_CASE("price regression spec validation") {
    PriceRegressionSpec spec;
    CHECK_NOTHROW(spec.validate());
    spec.beta[5] = 0.3;
    CHECK_THROWS_AS(spec.validate(), InputError);
    spec.included_blocks.insert(Block::attractiveness);
    CHECK_NOTHROW(spec.validate());
    spec.noise_sd = -1.0;
    CHECK_THROWS_AS(spec.validate(), InputError);
    CHECK(PriceRegressionSpec::fundamentals_only().beta == std::array<double, 7>{0, 1, 1, -1, -1, 0, 0});
    CHECK(parse_supply_rule("constant") == SupplyRule::constant);
    CHECK_THROWS_AS((void)parse_supply_rule("halving"), InputError);
}

TEST_CASE("noiseless economy satisfies the log equilibrium identity") {
    for (auto rule : {SupplyRule::fixed_schedule, SupplyRule::constant}) {
        const auto p = simulate_economy(PriceRegressionSpec::fundamentals_only(), 500, rule, 42);
        CHECK(p.variables() == std::vector<std::string>{"mkpru", "exrate", "ntran", "bcdde", "totbc"});
        const Eigen::VectorXd lhs = p.column("mkpru");
        const Eigen::VectorXd rhs = p.column("exrate") + p.column("ntran") - p.column("bcdde") - p.column("totbc");
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
        // And in levels: P_B B = P Y / V.
        const auto lv = to_levels(p);
        for (Eigen::Index t = 0; t < lv.rows(); t += 50) {
            EconomyState s{lv.data()(t, 1), lv.data()(t, 2), lv.data()(t, 3), lv.data()(t, 4), lv.data()(t, 0)};
            CHECK(equilibrium_gap(s) < 1e-12);
        }
    }
}

TEST_CASE("simulation is reproducible from the seed") {
    const auto spec = PriceRegressionSpec::fundamentals_only(0.01);
    const auto a = simulate_economy(spec, 300, SupplyRule::fixed_schedule, 7);
    const auto b = simulate_economy(spec, 300, SupplyRule::fixed_schedule, 7);
    const auto c = simulate_economy(spec, 300, SupplyRule::fixed_schedule, 8);
    CHECK(a.data() == b.data());
    CHECK(a.index() == b.index());
    CHECK(a.data() != c.data());
    CHECK(series::format_date(a.index().front()) == "2010-01-01");
}

TEST_CASE("length precondition") {
    try {
        (void)simulate_economy(PriceRegressionSpec::fundamentals_only(), 50, SupplyRule::fixed_schedule, 1);
        FAIL("expected an error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("T too small") != std::string::npos);
    }
}

TEST_CASE("issuance schedule is increasing and concave") {
    const auto p = simulate_economy(PriceRegressionSpec::fundamentals_only(), 1000, SupplyRule::fixed_schedule, 3);
    const Eigen::VectorXd b = p.column("totbc").array().exp();
    for (Eigen::Index t = 1; t < b.size(); ++t) CHECK(b(t) > b(t - 1));
    for (Eigen::Index t = 2; t < b.size(); ++t) CHECK(b(t) - b(t - 1) < b(t - 1) - b(t - 2));
    CHECK(b(b.size() - 1) < DriverSettings{}.supply_cap);
}

TEST_CASE("extended blocks add columns") {
    PriceRegressionSpec spec;
    spec.included_blocks = {Block::fundamentals, Block::attractiveness, Block::macro};
    spec.beta[5] = 0.2;
    spec.beta[6] = -0.3;
    const auto p = simulate_economy(spec, 200, SupplyRule::constant, 9);
    CHECK(p.variables() == simulated_variables(spec));
    CHECK(p.has("wiki_views"));
    CHECK(p.has("dj"));
    const Eigen::VectorXd rhs = p.column("exrate") + p.column("ntran") - p.column("bcdde") - p.column("totbc") +
                                0.2 * p.column("wiki_views") - 0.3 * p.column("dj");
    CHECK((p.column("mkpru") - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("simulated panel survives the csv schema round trip") {
    const auto p = to_levels(simulate_economy(PriceRegressionSpec::fundamentals_only(0.01), 150, SupplyRule::fixed_schedule, 11));
    std::vector<series::TimeSeries> cols;
    for (const auto& v : p.variables()) cols.push_back(p.series(v));
    std::ostringstream out;
    series::write_wide_csv(out, cols);
    std::istringstream in(out.str());
    const auto loaded = series::parse_csv(in, "sim");
    const auto back = series::align(loaded.series, series::AlignmentPolicy::intersect_drop);
    CHECK(back.variables() == p.variables());
    CHECK(back.index() == p.index());
    CHECK(back.data() == p.data());
}

TEST_CASE("simulated economies are cointegrated") {
    int with_rank = 0;
    const int runs = 200;
    for (int seed = 0; seed < runs; ++seed) {
        const auto p = simulate_economy(PriceRegressionSpec::fundamentals_only(0.01), 500, SupplyRule::fixed_schedule,
                                        static_cast<std::uint64_t>(seed));
        const auto pick = johansen::pantula_select(p, 2, Significance::p05);
        if (pick.rank.selected_rank >= 1) ++with_rank;
    }
    CHECK(with_rank >= 170);
}

TEST_CASE("sign expectations") {
    vecm::EffectTables t;
    t.long_run = {{"totbc", vecm::make_cell(-5.96, 1.0)},
                  {"bcdde", vecm::make_cell(5.07, 1.0)},
                  {"naddu", vecm::make_cell(2.0, 1.0)},
                  {"wiki_views", vecm::make_cell(-0.4, 0.1)},
                  {"exrate", vecm::make_cell(0.3, 0.1)},
                  {"trend", vecm::make_cell(0.001, 0.0001)}};
    const auto r = sign_expectation_check(t, {Block::fundamentals, Block::attractiveness});
    REQUIRE(r.size() == 5);
    CHECK(r[0].verdict == SignVerdict::consistent);
    CHECK(r[0].expected == ExpectedSign::negative);
    CHECK(r[1].verdict == SignVerdict::inconsistent);
    CHECK(r[2].verdict == SignVerdict::consistent);
    CHECK(r[3].verdict == SignVerdict::not_applicable);
    CHECK(r[4].verdict == SignVerdict::not_applicable);
    CHECK(role_of("dj").block == Block::macro);
    CHECK(role_of("ntran").sign == ExpectedSign::positive);
    CHECK_THROWS_AS((void)role_of("gold"), InputError);
    // A block outside the model makes its rows not applicable.
    CHECK(sign_expectation_check(t, {Block::macro})[0].verdict == SignVerdict::not_applicable);
}
