#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cryptolab {

// Exact non-negative rational. Characteristic probabilities and fitness values
// are ratios of small counts, so 64-bit components are plenty.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Rational() = default;
    constexpr Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        normalize();
    }

    constexpr void normalize() {
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    constexpr Rational operator*(const Rational& o) const {
        // cross-reduce before multiplying to keep components small
        const std::int64_t g1 = std::gcd(num < 0 ? -num : num, o.den);
        const std::int64_t g2 = std::gcd(o.num < 0 ? -o.num : o.num, den);
        return Rational{(num / g1) * (o.num / g2), (den / g2) * (o.den / g1)};
    }

    constexpr bool operator==(const Rational& o) const { return num == o.num && den == o.den; }

    constexpr double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }
};

}  // namespace cryptolab
