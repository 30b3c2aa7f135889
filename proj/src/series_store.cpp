#include "coinecon/series_store.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "coinecon/errors.hpp"

namespace coinecon::series {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
        } else if (c == ',' && !quoted) {
            fields.emplace_back(trim(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.emplace_back(trim(current));
    return fields;
}

std::optional<double> parse_number(std::string_view text) {
    text = trim(text);
    if (text.empty()) return std::nullopt;
    if (text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) return std::nullopt;
    return value;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

std::optional<Date> try_parse_date(std::string_view text) {
    text = trim(text);
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    auto field = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
        int v = 0;
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, v);
        if (ec != std::errc{} || ptr != text.data() + pos + len) return std::nullopt;
        return v;
    };
    auto y = field(0, 4);
    auto m = field(5, 2);
    auto d = field(8, 2);
    if (!y || !m || !d) return std::nullopt;
    std::chrono::year_month_day ymd{std::chrono::year{*y},
                                    std::chrono::month{static_cast<unsigned>(*m)},
                                    std::chrono::day{static_cast<unsigned>(*d)}};
    if (!ymd.ok()) return std::nullopt;
    return Date{ymd};
}

Date parse_date(std::string_view text) {
    auto d = try_parse_date(text);
    if (!d) throw InputError("invalid date '" + std::string(text) + "' (expected YYYY-MM-DD)");
    return *d;
}

std::string format_date(Date date) {
    std::chrono::year_month_day ymd{date};
    return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(ymd.year()),
                       static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
}

std::string to_string(TransformTag tag) {
    switch (tag) {
    case TransformTag::level: return "level";
    case TransformTag::log: return "log";
    case TransformTag::first_difference: break;
    }
    return "first_difference";
}

std::string to_string(AlignmentPolicy policy) {
    return policy == AlignmentPolicy::intersect_drop ? "intersect_drop" : "forward_fill_macro";
}

AlignmentPolicy parse_alignment_policy(std::string_view text) {
    if (text == "intersect_drop" || text == "intersect") return AlignmentPolicy::intersect_drop;
    if (text == "forward_fill_macro" || text == "ffill") return AlignmentPolicy::forward_fill_macro;
    throw InputError("unknown alignment policy '" + std::string(text) +
                     "' (expected intersect_drop or forward_fill_macro)");
}

// --- TimeSeries -------------------------------------------------------------

TimeSeries::TimeSeries(std::string name, std::vector<Observation> observations, TransformTag tag)
    : name_(std::move(name)), observations_(std::move(observations)), tag_(tag) {
    for (std::size_t i = 0; i < observations_.size(); ++i) {
        const auto& obs = observations_[i];
        if (!std::isfinite(obs.value)) {
            throw InputError(fmt::format("series '{}': non-finite value at {}", name_,
                                         format_date(obs.date)));
        }
        if (i > 0) {
            const auto prev = observations_[i - 1].date;
            if (obs.date == prev) {
                throw InputError(fmt::format("series '{}': duplicate date {}", name_,
                                             format_date(obs.date)));
            }
            if (obs.date < prev) {
                throw InputError(fmt::format("series '{}': dates not increasing at {}", name_,
                                             format_date(obs.date)));
            }
        }
    }
}

std::vector<double> TimeSeries::values() const {
    std::vector<double> out;
    out.reserve(observations_.size());
    for (const auto& o : observations_) out.push_back(o.value);
    return out;
}

std::vector<Date> TimeSeries::dates() const {
    std::vector<Date> out;
    out.reserve(observations_.size());
    for (const auto& o : observations_) out.push_back(o.date);
    return out;
}

TimeSeries TimeSeries::renamed(std::string name) const {
    return TimeSeries(std::move(name), observations_, tag_);
}

TimeSeries make_series(std::string name, std::span<const Date> dates,
                       std::span<const double> values, TransformTag tag) {
    if (dates.size() != values.size()) {
        throw InputError("series '" + name + "': date and value counts differ");
    }
    std::vector<Observation> obs;
    obs.reserve(dates.size());
    for (std::size_t i = 0; i < dates.size(); ++i) obs.push_back({dates[i], values[i]});
    return TimeSeries(std::move(name), std::move(obs), tag);
}

// --- CSV --------------------------------------------------------------------

LoadResult parse_csv(std::istream& in, std::string source, const CsvSchema& schema) {
    std::string line;
    if (!std::getline(in, line)) throw InputError(source + ": empty file (header row required)");
    const auto header = split_csv_line(line);

    std::size_t date_col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (lower(header[i]) == "date") {
            date_col = i;
            break;
        }
    }

    struct Column {
        std::size_t index;
        std::string variable;
        std::vector<Observation> obs;
    };

    std::vector<std::string> rows;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        rows.push_back(line);
    }

    if (date_col == header.size()) {
        // Fall back to the first column when it holds dates.
        bool first_is_date = !rows.empty();
        for (std::size_t r = 0; r < std::min<std::size_t>(rows.size(), 5); ++r) {
            if (!try_parse_date(split_csv_line(rows[r]).front())) first_is_date = false;
        }
        if (!first_is_date || header.size() < 2) {
            throw InputError(source + ": no date column (expected a 'date' header or ISO dates "
                                      "in the first column)");
        }
        date_col = 0;
    }

    std::vector<Column> columns;
    if (schema.column_to_variable.empty()) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i != date_col) columns.push_back({i, header[i], {}});
        }
    } else {
        for (const auto& [col, variable] : schema.column_to_variable) {
            auto it = std::find(header.begin(), header.end(), col);
            if (it == header.end()) {
                throw InputError(source + ": schema column '" + col + "' not in header");
            }
            columns.push_back({static_cast<std::size_t>(it - header.begin()), variable, {}});
        }
        std::sort(columns.begin(), columns.end(),
                  [](const Column& a, const Column& b) { return a.index < b.index; });
    }
    if (columns.empty()) throw InputError(source + ": no value columns");

    LoadReport report;
    report.source = source;
    for (const auto& row : rows) {
        ++report.rows_read;
        const auto fields = split_csv_line(row);
        auto date = date_col < fields.size() ? try_parse_date(fields[date_col]) : std::nullopt;
        if (!date) {
            ++report.rows_dropped;
            continue;
        }
        bool dropped = false;
        for (auto& column : columns) {
            auto value = column.index < fields.size() ? parse_number(fields[column.index])
                                                      : std::nullopt;
            if (value) {
                column.obs.push_back({*date, *value});
            } else {
                dropped = true;
            }
        }
        if (dropped) ++report.rows_dropped;
    }

    LoadResult result;
    for (auto& column : columns) {
        if (column.obs.empty()) {
            throw InputError(source + ": zero parseable rows for column '" + column.variable + "'");
        }
        std::stable_sort(column.obs.begin(), column.obs.end(),
                         [](const Observation& a, const Observation& b) { return a.date < b.date; });
        auto s = [&] {
            try {
                return TimeSeries(column.variable, std::move(column.obs));
            } catch (const InputError& e) {
                throw InputError(source + ": " + e.what());
            }
        }();
        report.series.push_back({s.name(), s.observations().front().date,
                                 s.observations().back().date, s.size()});
        result.series.push_back(std::move(s));
    }
    result.report = std::move(report);
    return result;
}

LoadResult load_csv(const std::filesystem::path& path, const CsvSchema& schema) {
    std::ifstream in(path);
    if (!in) throw InputError("missing file: " + path.string());
    return parse_csv(in, path.string(), schema);
}

void write_wide_csv(std::ostream& out, std::span<const TimeSeries> series,
                    int significant_digits) {
    std::set<Date> all_dates;
    std::vector<std::unordered_map<Date::rep, double>> lookup(series.size());
    for (std::size_t j = 0; j < series.size(); ++j) {
        for (const auto& o : series[j].observations()) {
            all_dates.insert(o.date);
            lookup[j][o.date.time_since_epoch().count()] = o.value;
        }
    }
    out << "date";
    for (const auto& s : series) out << ',' << s.name();
    out << '\n';
    for (const auto& d : all_dates) {
        out << format_date(d);
        for (std::size_t j = 0; j < series.size(); ++j) {
            out << ',';
            auto it = lookup[j].find(d.time_since_epoch().count());
            if (it != lookup[j].end()) out << fmt::format("{:.{}g}", it->second, significant_digits);
        }
        out << '\n';
    }
}

// --- Panel ------------------------------------------------------------------

Panel::Panel(std::vector<std::string> variables, std::vector<Date> index, Eigen::MatrixXd data,
             AlignmentPolicy policy)
    : variables_(std::move(variables)),
      index_(std::move(index)),
      data_(std::move(data)),
      policy_(policy) {
    if (static_cast<std::size_t>(data_.cols()) != variables_.size() ||
        static_cast<std::size_t>(data_.rows()) != index_.size()) {
        throw InputError(fmt::format("panel shape {}x{} does not match {} dates x {} variables",
                                     data_.rows(), data_.cols(), index_.size(),
                                     variables_.size()));
    }
    std::set<std::string> seen;
    for (const auto& v : variables_) {
        if (!seen.insert(v).second) throw InputError("panel: duplicate variable '" + v + "'");
    }
    for (std::size_t i = 1; i < index_.size(); ++i) {
        if (!(index_[i - 1] < index_[i])) throw InputError("panel: dates not strictly increasing");
    }
    if (!data_.allFinite()) throw InputError("panel: non-finite cell");
}

bool Panel::has(std::string_view variable) const {
    return std::find(variables_.begin(), variables_.end(), variable) != variables_.end();
}

Eigen::Index Panel::index_of(std::string_view variable) const {
    auto it = std::find(variables_.begin(), variables_.end(), variable);
    if (it == variables_.end()) {
        throw InputError("panel does not contain variable '" + std::string(variable) + "'");
    }
    return static_cast<Eigen::Index>(it - variables_.begin());
}

Eigen::VectorXd Panel::column(std::string_view variable) const {
    return data_.col(index_of(variable));
}

TimeSeries Panel::series(std::string_view variable) const {
    const auto j = index_of(variable);
    std::vector<Observation> obs;
    obs.reserve(index_.size());
    for (std::size_t t = 0; t < index_.size(); ++t) {
        obs.push_back({index_[t], data_(static_cast<Eigen::Index>(t), j)});
    }
    return TimeSeries(std::string(variable), std::move(obs));
}

Panel Panel::select(std::span<const std::string> variables) const {
    Eigen::MatrixXd out(data_.rows(), static_cast<Eigen::Index>(variables.size()));
    for (std::size_t j = 0; j < variables.size(); ++j) {
        out.col(static_cast<Eigen::Index>(j)) = data_.col(index_of(variables[j]));
    }
    return Panel({variables.begin(), variables.end()}, index_, std::move(out), policy_);
}

std::set<std::string> default_weekday_series() { return {"exrate", "dj", "oil_price"}; }

Panel align(std::span<const TimeSeries> series, AlignmentPolicy policy,
            const std::set<std::string>& macro_series) {
    if (series.size() < 2) throw InputError("align: at least two series are required");

    // Candidate dates: every date observed in any series.
    std::set<Date> candidates;
    for (const auto& s : series) {
        for (const auto& o : s.observations()) candidates.insert(o.date);
    }

    std::vector<std::map<Date, double>> filled(series.size());
    for (std::size_t j = 0; j < series.size(); ++j) {
        const auto& obs = series[j].observations();
        for (const auto& o : obs) filled[j][o.date] = o.value;
        const bool fill = policy == AlignmentPolicy::forward_fill_macro &&
                          macro_series.count(series[j].name()) > 0 && !obs.empty();
        if (!fill) continue;
        // Carry the last observation forward onto candidate days strictly
        // inside the series' own observed range.
        std::size_t k = 0;
        for (auto it = candidates.lower_bound(obs.front().date);
             it != candidates.end() && *it <= obs.back().date; ++it) {
            while (k + 1 < obs.size() && obs[k + 1].date <= *it) ++k;
            filled[j].emplace(*it, obs[k].value);
        }
    }

    std::vector<Date> index;
    for (const auto& d : candidates) {
        bool everywhere = true;
        for (const auto& f : filled) {
            if (!f.count(d)) {
                everywhere = false;
                break;
            }
        }
        if (everywhere) index.push_back(d);
    }
    if (index.empty()) throw InputError("align: empty date intersection");

    Eigen::MatrixXd data(static_cast<Eigen::Index>(index.size()),
                         static_cast<Eigen::Index>(series.size()));
    std::vector<std::string> names;
    for (std::size_t j = 0; j < series.size(); ++j) {
        names.push_back(series[j].name());
        for (std::size_t t = 0; t < index.size(); ++t) {
            data(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) = filled[j].at(index[t]);
        }
    }
    return Panel(std::move(names), std::move(index), std::move(data), policy);
}

// --- transforms ---------------------------------------------------------------

TimeSeries log_transform(const TimeSeries& s) {
    std::vector<Observation> out;
    out.reserve(s.size());
    for (const auto& o : s.observations()) {
        if (!(o.value > 0.0)) {
            throw InputError(fmt::format("log_transform: series '{}' has non-positive value {} at {}",
                                         s.name(), o.value, format_date(o.date)));
        }
        out.push_back({o.date, std::log(o.value)});
    }
    return TimeSeries(s.name(), std::move(out), TransformTag::log);
}

Panel log_transform(const Panel& p) {
    const auto& data = p.data();
    for (Eigen::Index j = 0; j < data.cols(); ++j) {
        for (Eigen::Index t = 0; t < data.rows(); ++t) {
            if (!(data(t, j) > 0.0)) {
                throw InputError(fmt::format(
                    "log_transform: series '{}' has non-positive value {} at {}",
                    p.variables()[static_cast<std::size_t>(j)], data(t, j),
                    format_date(p.index()[static_cast<std::size_t>(t)])));
            }
        }
    }
    return Panel(p.variables(), p.index(), data.array().log().matrix(), p.alignment_policy());
}

TimeSeries difference(const TimeSeries& s, int order) {
    if (order < 1) throw InputError("difference: order must be positive");
    if (s.size() <= static_cast<std::size_t>(order)) {
        throw InputError(fmt::format("difference: series '{}' too short ({} <= {})", s.name(),
                                     s.size(), order));
    }
    std::vector<Observation> current = s.observations();
    for (int k = 0; k < order; ++k) {
        std::vector<Observation> next;
        next.reserve(current.size() - 1);
        for (std::size_t i = 1; i < current.size(); ++i) {
            next.push_back({current[i].date, current[i].value - current[i - 1].value});
        }
        current = std::move(next);
    }
    return TimeSeries(s.name(), std::move(current), TransformTag::first_difference);
}

// --- correlation ----------------------------------------------------------------

CorrelationMatrix correlation_matrix(const Panel& p) {
    const auto& x = p.data();
    if (x.rows() < 3) throw InputError("correlation_matrix: need at least 3 observations");
    Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
    Eigen::VectorXd norms = centered.colwise().norm();
    for (Eigen::Index j = 0; j < norms.size(); ++j) {
        if (!(norms(j) > 0.0)) {
            throw InputError("correlation_matrix: zero-variance column '" +
                             p.variables()[static_cast<std::size_t>(j)] + "'");
        }
    }
    Eigen::MatrixXd scaled = centered.array().rowwise() / norms.transpose().array();
    Eigen::MatrixXd c = scaled.transpose() * scaled;
    for (Eigen::Index i = 0; i < c.rows(); ++i) {
        c(i, i) = 1.0;
        for (Eigen::Index j = 0; j < i; ++j) {
            const double v = std::clamp(0.5 * (c(i, j) + c(j, i)), -1.0, 1.0);
            c(i, j) = v;
            c(j, i) = v;
        }
    }
    return {p.variables(), std::move(c)};
}

std::vector<CorrelatedPair> high_correlation_pairs(const CorrelationMatrix& c, double threshold) {
    std::vector<CorrelatedPair> out;
    const auto n = c.values.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double v = c.values(i, j);
            if (std::abs(v) > threshold) {
                out.push_back({c.variables[static_cast<std::size_t>(i)],
                               c.variables[static_cast<std::size_t>(j)], v});
            }
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const CorrelatedPair& a, const CorrelatedPair& b) {
        return std::abs(a.value) > std::abs(b.value);
    });
    return out;
}

}  // namespace coinecon::series
