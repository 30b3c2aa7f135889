#include <doctest.h>

#include <sstream>

#include "coinecon/errors.hpp"
#include "coinecon/render.hpp"
#include "support/render_fixture.hpp"

using namespace coinecon;
using namespace coinecon::render;

namespace {

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::vector<std::string> cells(const std::string& csv_line) {
    std::vector<std::string> out;
    std::istringstream in(csv_line);
    for (std::string c; std::getline(in, c, ',');) out.push_back(c);
    return out;
}

}  // namespace

TEST_CASE("cell formatting") {
    CHECK(format_cell(vecm::make_cell(0.147, 0.03), 3, false) == "0.147***");
    CHECK(format_cell(vecm::make_cell(-0.17, 0.1), 2, false) == "-0.17*");
    CHECK(format_cell(vecm::make_cell(0.021, 0.02), 3, false) == "-");
    CHECK(format_cell(vecm::make_cell(0.021, 0.02), 3, true) == "0.021");
    CHECK(format_cell(vecm::make_cell(-0.0004, 1.0), 3, true) == "0.000");
    CHECK(parse_format("csv") == Format::csv);
    CHECK_THROWS_AS((void)parse_format("xml"), InputError);
}

TEST_CASE("short-run grid layout") {
    const auto results = render_fixture::two_models();
    RenderOptions csv;
    csv.format = Format::csv;
    const auto doc = render_tables(results, TableKind::short_run, csv);
    const auto l = lines(doc);
    REQUIRE(l.size() >= 6);
    CHECK(l[0] == "regressor,M A,M B");
    // Rows grouped by variable (LD then L2D), union over models, then the constant.
    std::vector<std::string> labels;
    for (std::size_t i = 1; i < l.size(); ++i) labels.push_back(cells(l[i])[0]);
    CHECK(labels == std::vector<std::string>{"LD.mkpru", "L2D.mkpru", "LD.ntran", "L2D.ntran", "LD.wiki_views",
                                             "L2D.wiki_views", "constant"});
    CHECK(cells(l[1]) == std::vector<std::string>{"LD.mkpru", "0.147***", "0.200**"});
    CHECK(cells(l[2]) == std::vector<std::string>{"L2D.mkpru", "-", "-"});
    // Cross cells between models that share no regressors are dashes.
    CHECK(cells(l[3]) == std::vector<std::string>{"LD.ntran", "0.050*", "-"});
    CHECK(cells(l[4]) == std::vector<std::string>{"L2D.ntran", "-0.300***", "-"});
    CHECK(cells(l[5]) == std::vector<std::string>{"LD.wiki_views", "-", "-"});
}

TEST_CASE("long-run grid layout") {
    const auto results = render_fixture::two_models();
    RenderOptions csv;
    csv.format = Format::csv;
    const auto l = lines(render_tables(results, TableKind::long_run, csv));
    std::vector<std::string> labels;
    for (std::size_t i = 1; i < l.size() && !l[i].empty(); ++i) labels.push_back(cells(l[i])[0]);
    REQUIRE(labels.size() >= 3);
    CHECK(labels.front() == "ntran");
    CHECK(labels.back() == "constant");
    CHECK(cells(l[1]) == std::vector<std::string>{"ntran", "5.07***", "-"});
    CHECK(cells(l[2]) == std::vector<std::string>{"wiki_views", "-", "-"});
    CHECK(cells(l[3]) == std::vector<std::string>{"constant", "-77.35***", "-"});

    RenderOptions full = csv;
    full.full = true;
    const auto lf = lines(render_tables(results, TableKind::long_run, full));
    CHECK(cells(lf[2]) == std::vector<std::string>{"wiki_views", "-", "0.40"});
}

TEST_CASE("text output notes and determinism") {
    const auto results = render_fixture::two_models();
    const auto a = render_tables(results, TableKind::short_run, {}, "Short-run effects");
    const auto b = render_tables(results, TableKind::short_run, {}, "Short-run effects");
    CHECK(a == b);
    CHECK(a.rfind("Short-run effects", 0) == 0);
    CHECK(a.find("***") != std::string::npos);
    CHECK(a.find("1%") != std::string::npos);
    auto k1 = results;
    k1[1].fit->lag_order = 1;
    k1[1].tables->short_run[0] = {k1[1].tables->short_run[0].back()};
    CHECK(render_tables(k1, TableKind::short_run).find("M B: k = 1") != std::string::npos);
    CHECK_THROWS_AS((void)render_tables({}, TableKind::short_run), InputError);
}

TEST_CASE("correlation document") {
    series::CorrelationMatrix c{{"a", "b"}, Eigen::Matrix2d{{1.0, 0.923}, {0.923, 1.0}}};
    const auto t = lines(render_correlation(c, Format::text));
    REQUIRE(t.size() == 3);
    CHECK(t[2].find("0.92") != std::string::npos);
    CHECK(t[2].find("1") != std::string::npos);
    CHECK(t[1].find("0.92") == std::string::npos);
    const auto csv = lines(render_correlation(c, Format::csv));
    CHECK(csv[1] == "a,1,0.92");
}

TEST_CASE("effect table csv export") {
    const auto results = render_fixture::two_models();
    const auto csv = effect_tables_csv(*results[0].tables);
    const auto l = lines(csv);
    CHECK(l[0] == "section,equation,regressor,value,std_error,t_stat,stars,display");
    bool saw_long = false;
    for (const auto& row : l) {
        if (row.rfind("long_run", 0) == 0) saw_long = true;
    }
    CHECK(saw_long);
    CHECK(effect_tables_csv(*results[0].tables) == csv);
}
