#include "coinecon/deterministic.hpp"

#include "coinecon/errors.hpp"

namespace coinecon {

std::string to_string(UnitRootDeterministic d) {
    switch (d) {
    case UnitRootDeterministic::none: return "none";
    case UnitRootDeterministic::constant: return "constant";
    case UnitRootDeterministic::constant_trend: break;
    }
    return "constant_trend";
}

std::string to_string(DeterministicCase c) {
    switch (c) {
    case DeterministicCase::none: return "none";
    case DeterministicCase::restricted_constant: return "restricted_constant";
    case DeterministicCase::unrestricted_constant: return "unrestricted_constant";
    case DeterministicCase::restricted_trend: return "restricted_trend";
    case DeterministicCase::unrestricted_trend: break;
    }
    return "unrestricted_trend";
}

UnitRootDeterministic parse_unit_root_deterministic(std::string_view text) {
    if (text == "none") return UnitRootDeterministic::none;
    if (text == "constant" || text == "c") return UnitRootDeterministic::constant;
    if (text == "constant_trend" || text == "trend" || text == "ct")
        return UnitRootDeterministic::constant_trend;
    throw InputError("unknown deterministic specification '" + std::string(text) +
                     "' (expected none, constant or trend)");
}

DeterministicCase parse_deterministic_case(std::string_view text) {
    for (auto c : kAllCases) {
        if (text == to_string(c)) return c;
    }
    throw InputError("unknown deterministic case '" + std::string(text) + "'");
}

int restricted_terms(DeterministicCase c) noexcept {
    return (c == DeterministicCase::restricted_constant || c == DeterministicCase::restricted_trend)
               ? 1
               : 0;
}

}  // namespace coinecon
