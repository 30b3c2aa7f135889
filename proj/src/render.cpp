#include "coinecon/render.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "coinecon/errors.hpp"

namespace coinecon::render {

namespace {

using Row = std::vector<std::string>;

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string grid_text(const Row& header, const std::vector<Row>& rows) {
    std::vector<std::size_t> width(header.size(), 0);
    auto widen = [&](const Row& r) {
        for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
    };
    widen(header);
    for (const auto& r : rows) widen(r);
    std::string out;
    auto emit = [&](const Row& r) {
        std::string line;
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i == 0) {
                line += fmt::format("{:<{}}", r[i], width[i]);
            } else {
                line += fmt::format("  {:>{}}", r[i], width[i]);
            }
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line + "\n";
    };
    emit(header);
    for (const auto& r : rows) emit(r);
    return out;
}

std::string grid_csv(const Row& header, const std::vector<Row>& rows) {
    std::string out;
    auto emit = [&](const Row& r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i > 0) out += ',';
            out += csv_field(r[i]);
        }
        out += '\n';
    };
    emit(header);
    for (const auto& r : rows) emit(r);
    return out;
}

std::string grid(const Row& header, const std::vector<Row>& rows, Format format) {
    return format == Format::csv ? grid_csv(header, rows) : grid_text(header, rows);
}

std::string fixed(double v, int digits) {
    auto s = fmt::format("{:.{}f}", v, digits);
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

std::string lag_name(int lag, const std::string& v) {
    return lag == 1 ? "LD." + v : fmt::format("L{}D.{}", lag, v);
}

// Registry order first, then anything else in order of appearance.
std::vector<std::string> ordered_variables(const std::vector<catalog::PipelineResult>& results) {
    std::set<std::string> seen;
    for (const auto& r : results) seen.insert(r.variables.begin(), r.variables.end());
    std::vector<std::string> out;
    for (const auto& info : catalog::registry()) {
        if (seen.count(info.name) != 0) out.push_back(info.name);
    }
    for (const auto& r : results) {
        for (const auto& v : r.variables) {
            if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
        }
    }
    return out;
}

const vecm::CoefficientCell* find_cell(const std::vector<vecm::NamedCell>& cells, const std::string& name) {
    for (const auto& c : cells) {
        if (c.regressor == name) return &c.cell;
    }
    return nullptr;
}

std::string level_cv(const LevelMap<double>& cv) {
    return fmt::format("{:.2f}/{:.2f}/{:.2f}", cv.p10, cv.p05, cv.p01);
}

}  // namespace

Format parse_format(std::string_view text) {
    if (text == "text" || text == "txt") return Format::text;
    if (text == "csv") return Format::csv;
    throw InputError(fmt::format("unknown table format '{}'", text));
}

std::string format_cell(const vecm::CoefficientCell& cell, int digits, bool full) {
    if (!full && cell.display == vecm::Display::dash) return "-";
    return fixed(cell.value, digits) + vecm::to_string(cell.stars);
}

std::string render_tables(const std::vector<catalog::PipelineResult>& results, TableKind which,
                          const RenderOptions& options, const std::string& title) {
    if (results.empty()) throw InputError("render_tables: no results");
    Row header{""};
    for (const auto& r : results) header.push_back("M " + r.model_id);

    const auto vars = ordered_variables(results);
    const std::string price = catalog::kPriceVariable;
    std::vector<Row> rows;
    std::vector<std::string> notes;

    if (which == TableKind::short_run) {
        int max_lag = 0;
        bool any_trend = false;
        for (const auto& r : results) {
            if (r.fit) max_lag = std::max(max_lag, r.fit->lag_order - 1);
            if (r.tables && !r.tables->short_run.empty() && find_cell(r.tables->short_run.front(), "trend")) {
                any_trend = true;
            }
        }
        std::vector<std::string> labels;
        for (const auto& v : vars) {
            for (int lag = 1; lag <= max_lag; ++lag) labels.push_back(lag_name(lag, v));
        }
        if (any_trend) labels.emplace_back("trend");
        labels.emplace_back("constant");
        for (const auto& label : labels) {
            Row row{label};
            for (const auto& r : results) {
                const vecm::CoefficientCell* cell = nullptr;
                if (r.tables && !r.tables->short_run.empty()) {
                    const auto it = std::find(r.tables->variables.begin(), r.tables->variables.end(), price);
                    const auto eq = it == r.tables->variables.end()
                                        ? 0
                                        : static_cast<std::size_t>(it - r.tables->variables.begin());
                    cell = find_cell(r.tables->short_run[eq], label);
                }
                row.push_back(cell ? format_cell(*cell, options.short_run_digits, options.full) : "-");
            }
            rows.push_back(std::move(row));
        }
        for (const auto& r : results) {
            if (r.fit && r.fit->lag_order == 1) {
                notes.push_back(fmt::format("M {}: k = 1, so the model has no lagged differences.", r.model_id));
            }
        }
    } else {
        bool any_trend = false;
        for (const auto& r : results) {
            if (r.has_long_run() && find_cell(r.tables->long_run, "trend")) any_trend = true;
        }
        std::vector<std::string> labels;
        for (const auto& v : vars) {
            if (v != price) labels.push_back(v);
        }
        if (any_trend) labels.emplace_back("trend");
        labels.emplace_back("constant");
        for (const auto& label : labels) {
            Row row{label};
            for (const auto& r : results) {
                const vecm::CoefficientCell* cell = nullptr;
                if (r.has_long_run()) {
                    if (label == "constant") {
                        cell = r.tables->long_run_constant ? &*r.tables->long_run_constant : nullptr;
                    } else {
                        cell = find_cell(r.tables->long_run, label);
                    }
                }
                row.push_back(cell ? format_cell(*cell, options.long_run_digits, options.full) : "-");
            }
            rows.push_back(std::move(row));
        }
        for (const auto& r : results) {
            if (!r.has_long_run()) {
                notes.push_back(fmt::format("M {}: no long-run relation estimated.", r.model_id));
            }
        }
    }
    for (const auto& r : results) {
        for (const auto& f : r.failures) {
            notes.push_back(fmt::format("M {}: [{}] {}", r.model_id, f.stage, f.reason));
        }
    }

    std::string out;
    if (options.format == Format::csv) {
        header[0] = "regressor";
        return grid_csv(header, rows);
    }
    if (!title.empty()) out += title + "\n\n";
    out += grid_text(header, rows);
    out += "\nNotes: *** significant at 1% level, ** significant at 5% level, * significant at 10% level.\n";
    if (options.full) {
        out += "All estimates shown (full mode).\n";
    } else {
        out += "\"-\" indicates either absence of a variable in the respective model or the coefficient "
               "is not significantly different from zero.\n";
    }
    for (const auto& n : notes) out += n + "\n";
    return out;
}

std::string render_correlation(const series::CorrelationMatrix& c, Format format, int digits) {
    const auto n = c.values.rows();
    Row header{format == Format::csv ? "variable" : ""};
    header.insert(header.end(), c.variables.begin(), c.variables.end());
    std::vector<Row> rows;
    for (Eigen::Index i = 0; i < n; ++i) {
        Row row{c.variables[static_cast<std::size_t>(i)]};
        for (Eigen::Index j = 0; j < n; ++j) {
            if (format == Format::text && j > i) {
                row.emplace_back("");
            } else if (i == j) {
                row.emplace_back("1");
            } else {
                row.push_back(fixed(c.values(i, j), digits));
            }
        }
        rows.push_back(std::move(row));
    }
    return grid(header, rows, format);
}

std::string effect_tables_csv(const vecm::EffectTables& tables) {
    std::string out = "section,equation,regressor,value,std_error,t_stat,stars,display\n";
    auto emit = [&](const std::string& section, const std::string& eq, const std::string& reg,
                    const vecm::CoefficientCell& c) {
        out += fmt::format("{},{},{},{:.10g},{:.10g},{:.10g},{},{}\n", section, csv_field(eq), csv_field(reg),
                           c.value, c.std_error, c.t_stat, vecm::to_string(c.stars),
                           c.display == vecm::Display::shown ? "shown" : "dash");
    };
    for (std::size_t eq = 0; eq < tables.variables.size(); ++eq) {
        for (const auto& c : tables.short_run[eq]) emit("short_run", tables.variables[eq], c.regressor, c.cell);
    }
    for (std::size_t eq = 0; eq < tables.variables.size(); ++eq) {
        for (const auto& c : tables.adjustment[eq]) emit("adjustment", tables.variables[eq], c.regressor, c.cell);
    }
    for (const auto& c : tables.long_run) emit("long_run", tables.normalized_on, c.regressor, c.cell);
    if (tables.long_run_constant) emit("long_run", tables.normalized_on, "constant", *tables.long_run_constant);
    return out;
}

std::string effect_tables_text(const vecm::EffectTables& tables, bool full) {
    std::string out = fmt::format("rank {}, k = {}, deterministic terms: {}\n\n", tables.rank, tables.lag_order,
                                  to_string(tables.deterministic));
    auto section = [&](const std::string& title, const std::vector<std::vector<vecm::NamedCell>>& cells) {
        std::vector<std::string> labels;
        for (const auto& eq : cells) {
            for (const auto& c : eq) {
                if (std::find(labels.begin(), labels.end(), c.regressor) == labels.end()) labels.push_back(c.regressor);
            }
        }
        if (labels.empty()) return;
        Row header{title};
        for (const auto& v : tables.variables) header.push_back("D." + v);
        std::vector<Row> rows;
        for (const auto& label : labels) {
            Row row{label};
            for (const auto& eq : cells) {
                const auto* cell = find_cell(eq, label);
                row.push_back(cell ? format_cell(*cell, 3, full) : "-");
            }
            rows.push_back(std::move(row));
        }
        out += grid_text(header, rows) + "\n";
    };
    section("short run", tables.short_run);
    section("adjustment", tables.adjustment);
    if (!tables.long_run.empty() || tables.long_run_constant) {
        Row header{"long run", "effect on " + tables.normalized_on, "std. error"};
        std::vector<Row> rows;
        for (const auto& c : tables.long_run) {
            rows.push_back({c.regressor, format_cell(c.cell, 3, full), fixed(c.cell.std_error, 3)});
        }
        if (tables.long_run_constant) {
            rows.push_back({"constant", format_cell(*tables.long_run_constant, 3, full),
                            fixed(tables.long_run_constant->std_error, 3)});
        }
        out += grid_text(header, rows);
    }
    return out;
}

std::string render_unit_roots(const std::vector<UnitRootRow>& rows, Format format) {
    Row header{"variable", "ADF level", "lags", "ADF diff", "lags", "PP level", "bw", "PP diff", "bw",
               "5% cv level", "5% cv diff", "order"};
    std::vector<Row> out;
    for (const auto& r : rows) {
        out.push_back({r.variable, fixed(r.adf_level.statistic, 3), std::to_string(r.adf_level.lags_or_bandwidth),
                       fixed(r.adf_diff.statistic, 3), std::to_string(r.adf_diff.lags_or_bandwidth),
                       fixed(r.pp_level.statistic, 3), std::to_string(r.pp_level.lags_or_bandwidth),
                       fixed(r.pp_diff.statistic, 3), std::to_string(r.pp_diff.lags_or_bandwidth),
                       fixed(r.adf_level.critical_values.p05, 3), fixed(r.adf_diff.critical_values.p05, 3),
                       unit_root::to_string(r.order)});
    }
    return grid(header, out, format);
}

std::string render_rank(const johansen::CointRankResult& rank, Format format) {
    Row header{"r", "eigenvalue", "trace", "cv 10/5/1%", "max-eigen", "cv 10/5/1%"};
    std::vector<Row> rows;
    for (std::size_t r = 0; r < rank.trace_stats.size(); ++r) {
        rows.push_back({std::to_string(r), fixed(rank.eigenvalues[r], 4), fixed(rank.trace_stats[r], 2),
                        level_cv(rank.trace_critical_values[r]), fixed(rank.max_eigen_stats[r], 2),
                        level_cv(rank.max_eigen_critical_values[r])});
    }
    std::string out = grid(header, rows, format);
    if (format == Format::text) {
        out += fmt::format("\ndeterministic terms: {}; level {}; T = {}\nselected rank (trace): {}; max-eigen sequence: {}\n",
                           to_string(rank.deterministic), to_label(rank.level), rank.effective_T,
                           rank.selected_rank, rank.max_eigen_rank);
    }
    return out;
}

std::string render_diagnostics_summary(const std::vector<catalog::PipelineResult>& results) {
    std::string out;
    for (const auto& r : results) {
        std::string line = fmt::format("M {}:", r.model_id);
        if (r.fit) {
            line += fmt::format(" k={} r={} case={}", r.fit->lag_order, r.fit->rank, to_string(r.fit->deterministic));
        }
        if (r.diagnostics) {
            for (const auto& [test, pass] : r.diagnostics->verdicts) {
                line += fmt::format(" {}={}", test, pass ? "pass" : "fail");
            }
        }
        for (const auto& f : r.failures) line += fmt::format(" [{}] {}", f.stage, f.reason);
        out += line + "\n";
    }
    return out;
}

}  // namespace coinecon::render
