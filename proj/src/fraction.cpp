#include "peri_couple/fraction.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

namespace peri_couple {

namespace {

std::optional<std::int64_t> parse_int(std::string_view s) {
    if (s.empty()) {
        return std::nullopt;
    }
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

std::optional<Fraction> make(std::int64_t num, std::int64_t den) {
    if (den == 0) {
        return std::nullopt;
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    return Fraction{num / g, den / g};
}

} // namespace

std::string Fraction::str() const {
    if (den == 1) {
        return std::to_string(num);
    }
    return std::to_string(num) + "/" + std::to_string(den);
}

std::optional<Fraction> parse_fraction(std::string_view text) {
    while (!text.empty() && text.front() == ' ') {
        text.remove_prefix(1);
    }
    while (!text.empty() && text.back() == ' ') {
        text.remove_suffix(1);
    }
    if (text.empty()) {
        return std::nullopt;
    }
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto num = parse_int(text.substr(0, slash));
        const auto den = parse_int(text.substr(slash + 1));
        if (!num || !den) {
            return std::nullopt;
        }
        return make(*num, *den);
    }
    bool negative = false;
    if (text.front() == '-' || text.front() == '+') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    const auto dot = text.find('.');
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || frac.size() > 15 || whole.size() > 15) {
        return std::nullopt;
    }
    for (char c : whole) {
        if (c < '0' || c > '9') {
            return std::nullopt;
        }
    }
    for (char c : frac) {
        if (c < '0' || c > '9') {
            return std::nullopt;
        }
    }
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) {
        den *= 10;
    }
    const std::int64_t w = whole.empty() ? 0 : *parse_int(whole);
    const std::int64_t f = frac.empty() ? 0 : *parse_int(frac);
    if (w > (INT64_MAX - f) / den) {
        return std::nullopt;
    }
    return make((negative ? -1 : 1) * (w * den + f), den);
}

Fraction approximate_fraction(double value, std::int64_t max_den) {
    // continued fraction convergents
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double x = value;
    for (int it = 0; it < 64; ++it) {
        const double a = std::floor(x);
        if (std::abs(a) > 1e15) {
            break;
        }
        const auto ai = static_cast<std::int64_t>(a);
        const std::int64_t q2 = ai * q1 + q0;
        if (q2 > max_den) {
            break;
        }
        const std::int64_t p2 = ai * p1 + p0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        if (std::abs(static_cast<double>(p1) / static_cast<double>(q1) - value) <= 1e-15 * std::abs(value)) {
            break;
        }
        const double rest = x - a;
        if (rest == 0.0) {
            break;
        }
        x = 1.0 / rest;
    }
    return *make(p1, q1 == 0 ? 1 : q1);
}

} // namespace peri_couple
