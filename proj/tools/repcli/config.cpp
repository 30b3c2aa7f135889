#include "config.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <fstream>

#include "coinecon/errors.hpp"

namespace repcli {

using coinecon::InputError;

namespace {

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    for (char c : s + ",") {
        if (c == ',') {
            item = trim(item);
            if (!item.empty()) out.push_back(item);
            item.clear();
        } else {
            item += c;
        }
    }
    return out;
}

long long to_integer(const std::string& key, const std::string& v) {
    long long out = 0;
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end) throw InputError(fmt::format("config: {} must be an integer (got '{}')", key, v));
    return out;
}

double to_real(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw InputError(fmt::format("config: {} must be a number (got '{}')", key, v));
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw InputError(fmt::format("config: {} must be true or false (got '{}')", key, v));
}

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys{
        "data", "alignment", "level", "max_lags", "models", "variables", "out", "format", "seed",
        "deterministic", "unit_root_max_lags", "case", "lags", "rank", "full", "lm_lags", "threads",
        "plot_data", "transform", "corr_transform", "T", "noise_sd", "supply_rule", "blocks", "digits"};
    return keys;
}

}  // namespace

bool is_known_key(const std::string& key) {
    const auto& keys = known_keys();
    return std::find(keys.begin(), keys.end(), key) != keys.end();
}

KeyValues default_values() {
    return {{"alignment", "forward_fill_macro"},
            {"level", "0.05"},
            {"max_lags", "8"},
            {"models", "all"},
            {"out", "out"},
            {"format", "text,csv,json"},
            {"seed", "42"},
            {"deterministic", "constant"},
            {"full", "false"},
            {"lm_lags", "4"},
            {"threads", "0"},
            {"plot_data", "false"},
            {"transform", "log"},
            {"corr_transform", "level"},
            {"T", "1000"},
            {"noise_sd", "0"},
            {"supply_rule", "fixed_schedule"},
            {"blocks", "fundamentals"},
            {"digits", "7"}};
}

KeyValues read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError(fmt::format("{}: cannot open config file", path.string()));
    KeyValues kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InputError(fmt::format("{}:{}: expected key = value", path.string(), line_no));
        }
        const auto key = trim(line.substr(0, eq));
        if (!is_known_key(key)) {
            throw InputError(fmt::format("{}:{}: unknown key '{}'", path.string(), line_no, key));
        }
        kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

KeyValues merge(const KeyValues& defaults, const KeyValues& file, const KeyValues& flags) {
    KeyValues out = defaults;
    for (const auto& [k, v] : file) out[k] = v;
    for (const auto& [k, v] : flags) out[k] = v;
    return out;
}

RunConfig to_config(const KeyValues& kv) {
    RunConfig c;
    auto get = [&](const std::string& key) -> const std::string* {
        const auto it = kv.find(key);
        return it == kv.end() || it->second.empty() ? nullptr : &it->second;
    };
    if (const auto* v = get("data")) c.data = split_list(*v);
    if (const auto* v = get("alignment")) c.alignment = coinecon::series::parse_alignment_policy(*v);
    if (const auto* v = get("level")) c.level = coinecon::parse_significance(*v);
    if (const auto* v = get("max_lags")) {
        c.max_lags = static_cast<int>(to_integer("max_lags", *v));
        if (c.max_lags < 1) throw InputError("config: max_lags must be at least 1");
    }
    if (const auto* v = get("models")) c.models = split_list(*v);
    if (const auto* v = get("variables")) c.variables = split_list(*v);
    if (const auto* v = get("out")) c.out = *v;
    if (const auto* v = get("format")) {
        c.formats.clear();
        for (const auto& f : split_list(*v)) {
            if (f != "text" && f != "csv" && f != "json") {
                throw InputError(fmt::format("config: unknown output format '{}'", f));
            }
            c.formats.insert(f);
        }
    }
    if (c.formats.empty()) throw InputError("config: at least one output format is required");
    if (const auto* v = get("seed")) c.seed = static_cast<std::uint64_t>(to_integer("seed", *v));
    if (const auto* v = get("deterministic")) c.deterministic = coinecon::parse_unit_root_deterministic(*v);
    if (const auto* v = get("unit_root_max_lags")) {
        c.unit_root_max_lags = static_cast<std::size_t>(to_integer("unit_root_max_lags", *v));
    }
    if (const auto* v = get("case"); v && *v != "auto") c.johansen_case = coinecon::parse_deterministic_case(*v);
    if (const auto* v = get("lags"); v && *v != "auto") {
        c.lags = static_cast<int>(to_integer("lags", *v));
        if (*c.lags < 1) throw InputError("config: lags must be at least 1");
    }
    if (const auto* v = get("rank"); v && *v != "auto") c.rank = static_cast<int>(to_integer("rank", *v));
    if (const auto* v = get("full")) c.full = to_bool("full", *v);
    if (const auto* v = get("lm_lags")) c.lm_lags = static_cast<int>(to_integer("lm_lags", *v));
    if (const auto* v = get("threads")) c.threads = static_cast<unsigned>(to_integer("threads", *v));
    if (const auto* v = get("plot_data")) c.plot_data = to_bool("plot_data", *v);
    if (const auto* v = get("transform")) {
        if (*v != "log" && *v != "level") throw InputError("config: transform must be log or level");
        c.log_transform = *v == "log";
    }
    if (const auto* v = get("corr_transform")) {
        if (*v != "log" && *v != "level") throw InputError("config: corr_transform must be log or level");
        c.corr_logs = *v == "log";
    }
    if (const auto* v = get("T")) c.T = static_cast<int>(to_integer("T", *v));
    if (const auto* v = get("noise_sd")) c.noise_sd = to_real("noise_sd", *v);
    if (const auto* v = get("supply_rule")) c.supply_rule = coinecon::barro::parse_supply_rule(*v);
    if (const auto* v = get("blocks")) {
        c.blocks.clear();
        for (const auto& b : split_list(*v)) {
            if (b == "fundamentals") {
                c.blocks.insert(coinecon::barro::Block::fundamentals);
            } else if (b == "attractiveness") {
                c.blocks.insert(coinecon::barro::Block::attractiveness);
            } else if (b == "macro") {
                c.blocks.insert(coinecon::barro::Block::macro);
            } else {
                throw InputError(fmt::format("config: unknown block '{}'", b));
            }
        }
    }
    if (const auto* v = get("digits")) {
        c.digits = static_cast<int>(to_integer("digits", *v));
        if (c.digits < 3 || c.digits > 17) throw InputError("config: digits must be in [3, 17]");
    }
    return c;
}

}  // namespace repcli
