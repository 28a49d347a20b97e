#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cryptolab/finite_math.hpp"

namespace cryptolab {

// Field abstraction used by the interpolation routines: add, sub, mul,
// multiplicative inverse, the two constants, and equality. Nothing else about
// the structure is assumed.

struct RealField {
    using Value = double;
    Value add(Value a, Value b) const { return a + b; }
    Value sub(Value a, Value b) const { return a - b; }
    Value mul(Value a, Value b) const { return a * b; }
    Value inv(Value a) const {
        if (a == 0.0) throw std::domain_error("inverse of zero");
        return 1.0 / a;
    }
    Value zero() const { return 0.0; }
    Value one() const { return 1.0; }
    bool eq(Value a, Value b) const { return a == b; }
};

// Addition and subtraction collapse to XOR; division goes through gf_inverse.
struct Gf256Field {
    using Value = std::uint8_t;
    std::uint16_t modulus = kGf256DefaultModulus;
    Value add(Value a, Value b) const { return a ^ b; }
    Value sub(Value a, Value b) const { return a ^ b; }
    Value mul(Value a, Value b) const { return gf_mul(a, b, modulus); }
    Value inv(Value a) const { return gf_inverse(a, modulus); }
    Value zero() const { return 0; }
    Value one() const { return 1; }
    bool eq(Value a, Value b) const { return a == b; }
};

template <typename F>
using PointList = std::vector<std::pair<typename F::Value, typename F::Value>>;

struct IllPosedInterpolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

template <typename F>
void ensure_distinct_abscissae(const F& field, const PointList<F>& points) {
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (field.eq(points[i].first, points[j].first))
                throw IllPosedInterpolation("duplicate x value in interpolation points");
}

// Value at x of the unique degree <= n polynomial through n+1 points, as the
// weighted sum of basis products.
template <typename F>
typename F::Value lagrange_interpolate(const F& field, const PointList<F>& points, typename F::Value x) {
    if (points.empty()) throw IllPosedInterpolation("no interpolation points");
    ensure_distinct_abscissae(field, points);
    auto acc = field.zero();
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto term = points[i].second;
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (j == i) continue;
            const auto num = field.sub(x, points[j].first);
            const auto den = field.sub(points[i].first, points[j].first);
            term = field.mul(term, field.mul(num, field.inv(den)));
        }
        acc = field.add(acc, term);
    }
    return acc;
}

// Divided-difference form: coefficient k is the k-th divided difference of
// the leading k+1 points.
template <typename F>
struct NewtonPolynomial {
    std::vector<typename F::Value> anchors;       // x_0 .. x_n
    std::vector<typename F::Value> coefficients;  // b_0 .. b_n
};

template <typename F>
NewtonPolynomial<F> newton_coefficients(const F& field, const PointList<F>& points) {
    if (points.empty()) throw IllPosedInterpolation("no interpolation points");
    ensure_distinct_abscissae(field, points);
    const std::size_t n = points.size();
    std::vector<typename F::Value> column(n);
    NewtonPolynomial<F> poly;
    poly.anchors.reserve(n);
    poly.coefficients.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        column[i] = points[i].second;
        poly.anchors.push_back(points[i].first);
    }
    poly.coefficients.push_back(column[0]);
    for (std::size_t order = 1; order < n; ++order) {
        for (std::size_t i = 0; i + order < n; ++i) {
            const auto num = field.sub(column[i + 1], column[i]);
            const auto den = field.sub(points[i + order].first, points[i].first);
            column[i] = field.mul(num, field.inv(den));
        }
        poly.coefficients.push_back(column[0]);
    }
    return poly;
}

// Nested evaluation from the highest coefficient down.
template <typename F>
typename F::Value horner_eval(const F& field, const NewtonPolynomial<F>& poly, typename F::Value x) {
    if (poly.coefficients.empty()) throw std::invalid_argument("empty polynomial");
    auto s = poly.coefficients.back();
    for (std::size_t i = poly.coefficients.size() - 1; i-- > 0;)
        s = field.add(field.mul(s, field.sub(x, poly.anchors[i])), poly.coefficients[i]);
    return s;
}

// --- interpolation key recovery -----------------------------------------------
//
// Chosen-plaintext convention: the left half of every plaintext is one fixed
// byte and the right half varies, so the keyed round-(R-1) half is a
// univariate polynomial of the varied byte. A candidate last-round key is kept
// when a degree-bounded Newton fit through the first pairs extrapolates every
// check pair exactly.

struct InterpAttackEntry {
    std::uint8_t key = 0;
    bool survived = false;
};

struct InterpAttackResult {
    std::vector<InterpAttackEntry> table;  // all 256 candidates in key order
    int degree_bound = 0;
    int checked_pairs = 0;

    std::vector<std::uint8_t> survivors() const {
        std::vector<std::uint8_t> keys;
        for (const auto& e : table)
            if (e.survived) keys.push_back(e.key);
        return keys;
    }
};

template <typename Cipher>
struct InterpAttackConfig {
    const Cipher& cipher;
    int degree_bound = 1;
    std::vector<std::pair<std::uint16_t, std::uint16_t>> pairs;  // (plaintext, ciphertext)
    int extra_checks = 1;
};

template <typename Cipher>
InterpAttackResult interpolation_attack(const InterpAttackConfig<Cipher>& config) {
    const int d = config.degree_bound;
    if (d < 0 || d > 255) throw std::invalid_argument("degree bound must lie in [0, 255]");
    if (config.extra_checks < 1) throw std::invalid_argument("at least one check pair is required");
    const std::size_t needed = static_cast<std::size_t>(d) + 1 + static_cast<std::size_t>(config.extra_checks);
    if (config.pairs.size() < needed)
        throw std::invalid_argument("insufficient data: need at least degree+1 fit pairs plus the check pairs");

    const std::uint8_t fixed_left = static_cast<std::uint8_t>(config.pairs.front().first >> 8);
    for (const auto& [p, c] : config.pairs)
        if (static_cast<std::uint8_t>(p >> 8) != fixed_left)
            throw std::invalid_argument("chosen-plaintext convention: left half must stay fixed");

    const Gf256Field field;
    InterpAttackResult result;
    result.degree_bound = d;
    result.checked_pairs = config.extra_checks;
    result.table.resize(256);
    for (int key = 0; key < 256; ++key) {
        const auto k = static_cast<std::uint8_t>(key);
        PointList<Gf256Field> fit;
        fit.reserve(static_cast<std::size_t>(d) + 1);
        for (int i = 0; i <= d; ++i) {
            const auto [p, c] = config.pairs[static_cast<std::size_t>(i)];
            fit.emplace_back(static_cast<std::uint8_t>(p & 0xFF),
                             config.cipher.partial_decrypt_last_round(c, k).first);
        }
        const auto poly = newton_coefficients(field, fit);
        bool survived = true;
        for (int i = 0; i < config.extra_checks && survived; ++i) {
            const auto [p, c] = config.pairs[static_cast<std::size_t>(d) + 1 + static_cast<std::size_t>(i)];
            const auto predicted = horner_eval(field, poly, static_cast<std::uint8_t>(p & 0xFF));
            survived = predicted == config.cipher.partial_decrypt_last_round(c, k).first;
        }
        result.table[static_cast<std::size_t>(key)] = {k, survived};
    }
    return result;
}

// Minimal degree for which a Newton fit through the leading points reproduces
// the keyed round-(R-1) half on the full input byte range. Forward-traces the
// cipher under its true key, so this is an oracle for picking degree bounds.
template <typename Cipher>
int probe_minimal_degree(const Cipher& cipher, std::uint8_t fixed_left, int max_degree = 255) {
    const Gf256Field field;
    PointList<Gf256Field> all;
    all.reserve(256);
    for (int x = 0; x < 256; ++x) {
        const auto p = static_cast<std::uint16_t>((static_cast<std::uint16_t>(fixed_left) << 8) | x);
        const auto trace = cipher.encrypt_trace(p);
        all.emplace_back(static_cast<std::uint8_t>(x), trace[trace.size() - 2].first);
    }
    for (int d = 0; d <= max_degree; ++d) {
        const PointList<Gf256Field> lead(all.begin(), all.begin() + d + 1);
        const auto poly = newton_coefficients(field, lead);
        bool exact = true;
        for (const auto& [x, y] : all)
            if (horner_eval(field, poly, x) != y) {
                exact = false;
                break;
            }
        if (exact) return d;
    }
    throw std::runtime_error("no polynomial of the allowed degree reproduces the mapping");
}

}  // namespace cryptolab
