#pragma once

#include <array>
#include <string>
#include <string_view>

namespace coinecon {

/// Conventional significance levels used by every tabulated test.
enum class Significance { p01, p05, p10 };

inline constexpr std::array<Significance, 3> kAllLevels{Significance::p01, Significance::p05,
                                                        Significance::p10};

[[nodiscard]] double to_probability(Significance level) noexcept;

/// "1%", "5%", "10%".
[[nodiscard]] std::string to_label(Significance level);

/// Accepts 0.01 / 0.05 / 0.10 (any float spelling) or "1%" / "5%" / "10%".
/// Throws InputError for anything else.
[[nodiscard]] Significance parse_significance(std::string_view text);

/// A value per significance level.
template <class T>
struct LevelMap {
    T p01{};
    T p05{};
    T p10{};

    [[nodiscard]] T& operator[](Significance level) noexcept {
        switch (level) {
        case Significance::p01: return p01;
        case Significance::p05: return p05;
        case Significance::p10: break;
        }
        return p10;
    }
    [[nodiscard]] const T& operator[](Significance level) const noexcept {
        return const_cast<LevelMap&>(*this)[level];
    }

    bool operator==(const LevelMap&) const = default;
};

}  // namespace coinecon
