#include "coinecon/significance.hpp"

#include <charconv>
#include <cmath>

#include "coinecon/errors.hpp"

namespace coinecon {

double to_probability(Significance level) noexcept {
    switch (level) {
    case Significance::p01: return 0.01;
    case Significance::p05: return 0.05;
    case Significance::p10: break;
    }
    return 0.10;
}

std::string to_label(Significance level) {
    switch (level) {
    case Significance::p01: return "1%";
    case Significance::p05: return "5%";
    case Significance::p10: break;
    }
    return "10%";
}

Significance parse_significance(std::string_view text) {
    if (text == "1%") return Significance::p01;
    if (text == "5%") return Significance::p05;
    if (text == "10%") return Significance::p10;
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec == std::errc{} && ptr == end) {
        for (auto level : kAllLevels) {
            if (std::abs(value - to_probability(level)) < 1e-12) return level;
        }
    }
    throw InputError("significance level must be one of 0.01, 0.05, 0.10 (got '" +
                     std::string(text) + "')");
}

}  // namespace coinecon
