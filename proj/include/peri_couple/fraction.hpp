#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace peri_couple {

/// Exact rational read from the command line; always reduced, den > 0.
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    /// "1/8", or "3" when the denominator is 1.
    std::string str() const;

    bool operator==(const Fraction&) const = default;
};

/// Accepts "p/q", integers and plain decimals ("0.125" reads as 1/8).
std::optional<Fraction> parse_fraction(std::string_view text);

/// Nearest fraction with denominator up to max_den, used to label values
/// that did not come from the command line.
Fraction approximate_fraction(double value, std::int64_t max_den = 1 << 20);

} // namespace peri_couple
