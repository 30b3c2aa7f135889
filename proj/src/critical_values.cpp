#include "coinecon/critical_values.hpp"

#include <fmt/format.h>

#include <array>
#include <map>
#include <sstream>
#include <tuple>

#include "coinecon/checksum.hpp"
#include "coinecon/errors.hpp"

namespace coinecon::critical_values {

namespace detail {
extern const std::string_view kEmbeddedTable;
extern const std::string_view kEmbeddedSha256;
}  // namespace detail

namespace {

struct ResponseSurface {
    std::array<double, 4> b{};  // b_inf, b1, b2, b3

    [[nodiscard]] double at(double t) const {
        return b[0] + b[1] / t + b[2] / (t * t) + b[3] / (t * t * t);
    }
};

struct Tables {
    std::string version;
    std::map<std::pair<UnitRootDeterministic, Significance>, ResponseSurface> adf;
    std::map<std::tuple<JohansenStatistic, DeterministicCase, int>, LevelMap<double>> johansen;
    int max_dimension = 0;
};

Significance level_from_column(std::string_view s) {
    if (s == "0.01") return Significance::p01;
    if (s == "0.05") return Significance::p05;
    if (s == "0.10") return Significance::p10;
    throw NumericalError("critical-value table: bad level '" + std::string(s) + "'");
}

Tables parse(std::string_view text) {
    Tables t;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::string kind;
        fields >> kind;
        if (kind.empty()) continue;
        auto fail = [&] {
            throw NumericalError(fmt::format("critical-value table: malformed line {}", line_no));
        };
        if (kind == "version") {
            fields >> t.version;
        } else if (kind == "adf") {
            std::string det, level;
            ResponseSurface rs;
            fields >> det >> level >> rs.b[0] >> rs.b[1] >> rs.b[2] >> rs.b[3];
            if (!fields) fail();
            t.adf[{parse_unit_root_deterministic(det), level_from_column(level)}] = rs;
        } else if (kind == "trace" || kind == "max_eigen") {
            std::string case_name;
            int dim = 0;
            LevelMap<double> cv;
            fields >> case_name >> dim >> cv.p10 >> cv.p05 >> cv.p01;
            if (!fields) fail();
            const auto stat = kind == "trace" ? JohansenStatistic::trace : JohansenStatistic::max_eigen;
            t.johansen[{stat, parse_deterministic_case(case_name), dim}] = cv;
            t.max_dimension = std::max(t.max_dimension, dim);
        } else {
            fail();
        }
    }
    return t;
}

const Tables& tables() {
    static const Tables instance = [] {
        const auto digest = sha256_hex(detail::kEmbeddedTable);
        if (digest != detail::kEmbeddedSha256) {
            throw NumericalError("critical-value table checksum mismatch: manifest " +
                                 std::string(detail::kEmbeddedSha256) + ", computed " + digest);
        }
        return parse(detail::kEmbeddedTable);
    }();
    return instance;
}

}  // namespace

LevelMap<double> dickey_fuller(UnitRootDeterministic deterministic, std::size_t sample_size) {
    if (sample_size == 0) throw InputError("dickey_fuller: sample size must be positive");
    const auto& t = tables();
    LevelMap<double> out;
    for (auto level : kAllLevels) {
        auto it = t.adf.find({deterministic, level});
        if (it == t.adf.end()) {
            throw InputError("missing Dickey-Fuller critical value for " + to_string(deterministic));
        }
        out[level] = it->second.at(static_cast<double>(sample_size));
    }
    return out;
}

LevelMap<double> johansen(JohansenStatistic statistic, DeterministicCase c, int dimension) {
    const auto& t = tables();
    auto it = t.johansen.find({statistic, c, dimension});
    if (it == t.johansen.end()) {
        throw InputError(fmt::format("missing critical-value entry: {} statistic, case {}, n-r = {}",
                                     statistic == JohansenStatistic::trace ? "trace" : "max-eigen",
                                     to_string(c), dimension));
    }
    return it->second;
}

int johansen_max_dimension() { return tables().max_dimension; }

std::string_view embedded_text() { return detail::kEmbeddedTable; }
std::string_view manifest_sha256() { return detail::kEmbeddedSha256; }
std::string table_version() { return tables().version; }

}  // namespace coinecon::critical_values
