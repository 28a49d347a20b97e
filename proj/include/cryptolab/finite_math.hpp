#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "cryptolab/bits.hpp"

namespace cryptolab {

// --- modular integer arithmetic ---------------------------------------------

inline std::int64_t reduce_mod(std::int64_t a, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("modulus must be positive");
    const auto m = static_cast<std::int64_t>(n);
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline std::int64_t mod_add(std::int64_t a, std::int64_t b, std::uint64_t n) {
    return reduce_mod(reduce_mod(a, n) + reduce_mod(b, n), n);
}

inline std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::uint64_t n) {
    const auto x = static_cast<__int128>(reduce_mod(a, n));
    const auto y = static_cast<__int128>(reduce_mod(b, n));
    return static_cast<std::int64_t>(static_cast<__int128>(x * y % static_cast<__int128>(n)));
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
    if (a == 0 && b == 0) throw std::invalid_argument("gcd(0, 0) is undefined");
    return std::gcd(a, b);
}

// Multiplicative inverse of a modulo n via the extended Euclidean algorithm.
// When gcd(a, n) != 1 there is no inverse; the gcd is reported instead.
struct ModInverse {
    std::optional<std::uint64_t> value;
    std::uint64_t gcd = 0;

    explicit operator bool() const { return value.has_value(); }
};

inline ModInverse mod_inverse(std::int64_t a, std::uint64_t n) {
    if (n < 2) throw std::invalid_argument("mod_inverse: modulus must be >= 2");
    std::int64_t r0 = static_cast<std::int64_t>(n), r1 = reduce_mod(a, n);
    std::int64_t x0 = 0, x1 = 1;  // coefficients of a
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        x0 -= q * x1;
        std::swap(x0, x1);
    }
    if (r0 != 1) return {std::nullopt, static_cast<std::uint64_t>(r0)};
    return {static_cast<std::uint64_t>(reduce_mod(x0, n)), 1};
}

// --- GF(2^8) -----------------------------------------------------------------
//
// Bytes are bit polynomials over Z_2 with bit k holding the coefficient of x^k
// (least significant bit = constant term).

inline constexpr std::uint16_t kGf256DefaultModulus = 0x11B;  // x^8 + x^4 + x^3 + x + 1

inline std::uint8_t gf_mul(std::uint8_t a, std::uint8_t b, std::uint16_t modulus = kGf256DefaultModulus) {
    std::uint16_t acc = 0;
    std::uint16_t shifted = a;
    while (b) {
        if (b & 1u) acc ^= shifted;
        b >>= 1;
        shifted <<= 1;
        if (shifted & 0x100u) shifted ^= modulus;
    }
    return static_cast<std::uint8_t>(acc);
}

inline std::uint8_t gf_cube(std::uint8_t a, std::uint16_t modulus = kGf256DefaultModulus) {
    return gf_mul(gf_mul(a, a, modulus), a, modulus);
}

namespace detail {

inline int poly_degree(std::uint32_t p) {
    return p == 0 ? -1 : 31 - std::countl_zero(p);
}

// quotient/remainder of bit-polynomial division
inline std::pair<std::uint32_t, std::uint32_t> poly_divmod(std::uint32_t a, std::uint32_t b) {
    std::uint32_t q = 0;
    int db = poly_degree(b);
    while (poly_degree(a) >= db) {
        const int shift = poly_degree(a) - db;
        q ^= 1u << shift;
        a ^= b << shift;
    }
    return {q, a};
}

inline std::uint32_t poly_mul(std::uint32_t a, std::uint32_t b) {
    std::uint32_t r = 0;
    while (b) {
        if (b & 1u) r ^= a;
        a <<= 1;
        b >>= 1;
    }
    return r;
}

}  // namespace detail

// Extended Euclid over bit polynomials: a^{-1} modulo the field polynomial.
inline std::uint8_t gf_inverse(std::uint8_t a, std::uint16_t modulus = kGf256DefaultModulus) {
    if (a == 0) throw std::domain_error("gf_inverse: zero has no inverse");
    std::uint32_t r0 = modulus, r1 = a;
    std::uint32_t x0 = 0, x1 = 1;
    while (r1 != 0) {
        const auto [q, rem] = detail::poly_divmod(r0, r1);
        r0 = r1;
        r1 = rem;
        const std::uint32_t nx = x0 ^ detail::poly_mul(q, x1);
        x0 = x1;
        x1 = nx;
    }
    // r0 == 1 whenever the modulus is irreducible
    if (r0 != 1) throw std::domain_error("gf_inverse: modulus not irreducible");
    return static_cast<std::uint8_t>(detail::poly_divmod(x0, modulus).second);
}

// --- Rijndael-style S-box generation -----------------------------------------

// Affine step: multiply by a fixed polynomial in the ring of bit polynomials
// modulo x^8 + 1 (a cyclic convolution), then add a constant.
struct SboxSpec {
    std::uint16_t field_polynomial = kGf256DefaultModulus;
    std::uint8_t affine_multiplier = 0x1F;  // x^4 + x^3 + x^2 + x + 1
    std::uint8_t affine_constant = 0x63;    // x^6 + x^5 + x + 1
};

inline std::uint8_t affine_transform(std::uint8_t a, const SboxSpec& spec = {}) {
    // multiplication by x^k modulo x^8 + 1 is a left rotation by k
    std::uint8_t r = 0;
    for (int k = 0; k < 8; ++k)
        if ((spec.affine_multiplier >> k) & 1u) r ^= rotl8(a, k);
    return static_cast<std::uint8_t>(r ^ spec.affine_constant);
}

struct SboxPair {
    std::array<std::uint8_t, 256> forward{};
    std::array<std::uint8_t, 256> inverse{};
};

inline SboxPair generate_rijndael_sbox(const SboxSpec& spec = {}) {
    SboxPair box;
    std::array<bool, 256> seen{};
    for (int i = 0; i < 256; ++i) {
        // 0 has no field inverse and maps through the affine step unchanged
        const std::uint8_t inv = i == 0 ? 0 : gf_inverse(static_cast<std::uint8_t>(i), spec.field_polynomial);
        const std::uint8_t out = affine_transform(inv, spec);
        if (seen[out]) throw std::domain_error("generate_rijndael_sbox: spec does not yield a bijection");
        seen[out] = true;
        box.forward[static_cast<std::size_t>(i)] = out;
        box.inverse[out] = static_cast<std::uint8_t>(i);
    }
    return box;
}

// The default table, shared by HypCipher and the sbox CLI.
inline const SboxPair& rijndael_sbox() {
    static const SboxPair box = generate_rijndael_sbox();
    return box;
}

}  // namespace cryptolab
