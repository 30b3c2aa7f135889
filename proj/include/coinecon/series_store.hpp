#pragma once

#include <Eigen/Dense>

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coinecon::series {

/// Calendar day, no time zone.
using Date = std::chrono::sys_days;

/// Parses an ISO 8601 calendar date (YYYY-MM-DD). Returns nullopt when malformed.
[[nodiscard]] std::optional<Date> try_parse_date(std::string_view text);
/// Like try_parse_date but throws InputError.
[[nodiscard]] Date parse_date(std::string_view text);
[[nodiscard]] std::string format_date(Date date);

enum class Frequency { daily };
enum class TransformTag { level, log, first_difference };
enum class AlignmentPolicy { intersect_drop, forward_fill_macro };

[[nodiscard]] std::string to_string(TransformTag tag);
[[nodiscard]] std::string to_string(AlignmentPolicy policy);
[[nodiscard]] AlignmentPolicy parse_alignment_policy(std::string_view text);

struct Observation {
    Date date;
    double value;
};

/**
 * @brief A named, date-indexed daily series.
 *
 * Construction validates the invariants: dates strictly increasing (a repeated
 * date is reported as "duplicate date") and every value finite. Instances are
 * immutable afterwards.
 */
class TimeSeries {
public:
    TimeSeries(std::string name, std::vector<Observation> observations,
               TransformTag tag = TransformTag::level);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] const std::vector<Observation>& observations() const noexcept {
        return observations_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return observations_.size(); }
    [[nodiscard]] Frequency frequency() const noexcept { return Frequency::daily; }
    [[nodiscard]] TransformTag transform_tag() const noexcept { return tag_; }
    [[nodiscard]] std::vector<double> values() const;
    [[nodiscard]] std::vector<Date> dates() const;

    /// Same observations under a different name.
    [[nodiscard]] TimeSeries renamed(std::string name) const;

private:
    std::string name_;
    std::vector<Observation> observations_;
    TransformTag tag_;
};

/// Builds a series from parallel date/value vectors.
[[nodiscard]] TimeSeries make_series(std::string name, std::span<const Date> dates,
                                     std::span<const double> values,
                                     TransformTag tag = TransformTag::level);

/// Column header -> variable name. Empty: every non-date column under its own name.
struct CsvSchema {
    std::map<std::string, std::string> column_to_variable;
};

struct SeriesSummary {
    std::string name;
    Date first_date;
    Date last_date;
    std::size_t n = 0;
};

struct LoadReport {
    std::string source;
    std::size_t rows_read = 0;
    std::size_t rows_dropped = 0;
    std::vector<SeriesSummary> series;
};

struct LoadResult {
    std::vector<TimeSeries> series;
    LoadReport report;
};

/**
 * @brief Reads a comma-separated file with a header row and one date column.
 *
 * The date column is the one headed "date" (case-insensitive) or, failing
 * that, the first column. Cells that do not parse as finite numbers are
 * skipped for their series only; a row with any skipped cell (or an
 * unparseable date) counts once towards rows_dropped.
 *
 * @throws InputError missing file, no date column, zero parseable rows,
 *         duplicate date, unknown schema column.
 */
[[nodiscard]] LoadResult load_csv(const std::filesystem::path& path,
                                  const CsvSchema& schema = {});
[[nodiscard]] LoadResult parse_csv(std::istream& in, std::string source,
                                   const CsvSchema& schema = {});

/// Writes series as one wide CSV (outer join on dates, blank where absent).
void write_wide_csv(std::ostream& out, std::span<const TimeSeries> series,
                    int significant_digits = 17);

/// An aligned multivariate sample: T rows (dates) by n columns (variables).
class Panel {
public:
    Panel(std::vector<std::string> variables, std::vector<Date> index, Eigen::MatrixXd data,
          AlignmentPolicy policy = AlignmentPolicy::intersect_drop);

    [[nodiscard]] const std::vector<std::string>& variables() const noexcept {
        return variables_;
    }
    [[nodiscard]] const std::vector<Date>& index() const noexcept { return index_; }
    [[nodiscard]] const Eigen::MatrixXd& data() const noexcept { return data_; }
    [[nodiscard]] AlignmentPolicy alignment_policy() const noexcept { return policy_; }
    [[nodiscard]] Eigen::Index rows() const noexcept { return data_.rows(); }
    [[nodiscard]] Eigen::Index cols() const noexcept { return data_.cols(); }

    [[nodiscard]] bool has(std::string_view variable) const;
    /// Throws InputError naming the variable when absent.
    [[nodiscard]] Eigen::Index index_of(std::string_view variable) const;
    [[nodiscard]] Eigen::VectorXd column(std::string_view variable) const;
    [[nodiscard]] TimeSeries series(std::string_view variable) const;
    /// Column subset in the requested order.
    [[nodiscard]] Panel select(std::span<const std::string> variables) const;

private:
    std::vector<std::string> variables_;
    std::vector<Date> index_;
    Eigen::MatrixXd data_;
    AlignmentPolicy policy_;
};

/// Variables whose source only publishes on trading days.
[[nodiscard]] std::set<std::string> default_weekday_series();

/**
 * @brief Aligns daily series onto a common date index.
 *
 * intersect_drop keeps dates present in every series. forward_fill_macro first
 * carries the last observed value of each series named in `macro_series` onto
 * the calendar days between its observations, then intersects. No date absent
 * from every input is ever produced.
 *
 * @throws InputError fewer than two series, or an empty intersection.
 */
[[nodiscard]] Panel align(std::span<const TimeSeries> series, AlignmentPolicy policy,
                          const std::set<std::string>& macro_series = default_weekday_series());

/// Natural log. Throws InputError naming the first date whose value is <= 0.
[[nodiscard]] TimeSeries log_transform(const TimeSeries& s);
[[nodiscard]] Panel log_transform(const Panel& p);

/// order-th difference; the result is `order` observations shorter.
[[nodiscard]] TimeSeries difference(const TimeSeries& s, int order = 1);

struct CorrelationMatrix {
    std::vector<std::string> variables;
    Eigen::MatrixXd values;
};

/// Pearson correlations of the panel columns.
/// @throws InputError T < 3 or a zero-variance column.
[[nodiscard]] CorrelationMatrix correlation_matrix(const Panel& p);

struct CorrelatedPair {
    std::string first;
    std::string second;
    double value = 0.0;
};

/// Off-diagonal pairs with |value| > threshold, sorted by descending |value|.
[[nodiscard]] std::vector<CorrelatedPair> high_correlation_pairs(const CorrelationMatrix& c,
                                                                 double threshold);

}  // namespace coinecon::series
