#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

#include "cryptolab/bits.hpp"

namespace cryptolab {

// 16-bit substitution-permutation network: four rounds of key mixing, four
// 4x4 S-boxes per round and a bit transposition, with a whitening subkey
// after the last substitution layer. Round r uses S-boxes spn_sbox(r, 1..4).

inline constexpr std::array<std::array<std::array<std::uint8_t, 16>, 4>, 4> kSpnSboxes{{
    {{{0xE, 0x4, 0xD, 0x1, 0x2, 0xF, 0xB, 0x8, 0x3, 0xA, 0x6, 0xC, 0x5, 0x9, 0x0, 0x7},
      {0x0, 0xF, 0x7, 0x4, 0xE, 0x2, 0xD, 0x1, 0xA, 0x6, 0xC, 0xB, 0x9, 0x5, 0x3, 0x8},
      {0x4, 0x1, 0xE, 0x8, 0xD, 0x6, 0x2, 0xB, 0xF, 0xC, 0x9, 0x7, 0x3, 0xA, 0x5, 0x0},
      {0xF, 0xC, 0x8, 0x2, 0x4, 0x9, 0x1, 0x7, 0x5, 0xB, 0x3, 0xE, 0xA, 0x0, 0x6, 0xD}}},
    {{{0xF, 0x1, 0x8, 0xE, 0x6, 0xB, 0x3, 0x4, 0x9, 0x7, 0x2, 0xD, 0xC, 0x0, 0x5, 0xA},
      {0x3, 0xD, 0x4, 0x7, 0xF, 0x2, 0x8, 0xE, 0xC, 0x0, 0x1, 0xA, 0x6, 0x9, 0xB, 0x5},
      {0x0, 0xE, 0x7, 0xB, 0xA, 0x4, 0xD, 0x1, 0x5, 0x8, 0xC, 0x6, 0x9, 0x3, 0x2, 0xF},
      {0xD, 0x8, 0xA, 0x1, 0x3, 0xF, 0x4, 0x2, 0xB, 0x6, 0x7, 0xC, 0x0, 0x5, 0xE, 0x9}}},
    {{{0xA, 0x0, 0x9, 0xE, 0x6, 0x3, 0xF, 0x5, 0x1, 0xD, 0xC, 0x7, 0xB, 0x4, 0x2, 0x8},
      {0xD, 0x7, 0x0, 0x9, 0x3, 0x4, 0x6, 0xA, 0x2, 0x8, 0x5, 0xE, 0xC, 0xB, 0xF, 0x1},
      {0xD, 0x6, 0x4, 0x9, 0x8, 0xF, 0x3, 0x0, 0xB, 0x1, 0x2, 0xC, 0x5, 0xA, 0xE, 0x7},
      {0x1, 0xA, 0xD, 0x0, 0x6, 0x9, 0x8, 0x7, 0x4, 0xF, 0xE, 0x3, 0xB, 0x5, 0x2, 0xC}}},
    {{{0x7, 0xD, 0xE, 0x3, 0x0, 0x6, 0x9, 0xA, 0x1, 0x2, 0x8, 0x5, 0xB, 0xC, 0x4, 0xF},
      {0xD, 0x8, 0xB, 0x5, 0x6, 0xF, 0x0, 0x3, 0x4, 0x7, 0x2, 0xC, 0x1, 0xA, 0xE, 0x9},
      {0xA, 0x6, 0x9, 0x0, 0xC, 0xB, 0x7, 0xD, 0xF, 0x1, 0x3, 0xE, 0x5, 0x2, 0x8, 0x4},
      {0x3, 0xF, 0x0, 0x6, 0xA, 0x1, 0xD, 0x8, 0x9, 0x4, 0x5, 0xB, 0xC, 0x7, 0x2, 0xE}}},
}};

// Bit transposition: input position i (1 = MSB) moves to kSpnPermutation[i-1].
// Output i of S-box j feeds input j of S-box i, which makes the map its own
// inverse.
inline constexpr std::array<int, 16> kSpnPermutation{1, 5, 9,  13, 2, 6, 10, 14,
                                                     3, 7, 11, 15, 4, 8, 12, 16};

inline const std::array<std::uint8_t, 16>& spn_sbox(int round, int box) {
    return kSpnSboxes[static_cast<std::size_t>(round - 1)][static_cast<std::size_t>(box - 1)];
}

inline std::uint16_t spn_permute(std::uint16_t x) {
    std::uint16_t y = 0;
    for (int i = 1; i <= 16; ++i)
        if (get_bit(x, 16, i)) y = static_cast<std::uint16_t>(with_bit(y, 16, kSpnPermutation[i - 1], 1));
    return y;
}

namespace detail {

struct SpnTables {
    // whole-word substitution per round, plus inverses, plus the permutation
    std::array<std::array<std::uint16_t, 65536>, 4> subst;
    std::array<std::array<std::uint16_t, 65536>, 4> inv_subst;
    std::array<std::uint16_t, 65536> perm;

    SpnTables() {
        std::array<std::array<std::uint8_t, 16>, 4> inv_box{};
        for (int r = 1; r <= 4; ++r) {
            for (int b = 1; b <= 4; ++b)
                for (int v = 0; v < 16; ++v)
                    inv_box[static_cast<std::size_t>(b - 1)][spn_sbox(r, b)[static_cast<std::size_t>(v)]] =
                        static_cast<std::uint8_t>(v);
            for (std::uint32_t x = 0; x < 65536; ++x) {
                std::uint16_t s = 0, is = 0;
                for (int b = 0; b < 4; ++b) {
                    const std::uint8_t nib = get_nibble(static_cast<std::uint16_t>(x), b);
                    s = with_nibble(s, b, spn_sbox(r, b + 1)[nib]);
                    is = with_nibble(is, b, inv_box[static_cast<std::size_t>(b)][nib]);
                }
                subst[static_cast<std::size_t>(r - 1)][x] = s;
                inv_subst[static_cast<std::size_t>(r - 1)][x] = is;
            }
        }
        for (std::uint32_t x = 0; x < 65536; ++x) perm[x] = spn_permute(static_cast<std::uint16_t>(x));
    }
};

inline const SpnTables& spn_tables() {
    static const SpnTables t;
    return t;
}

}  // namespace detail

inline std::uint16_t spn_substitute(std::uint16_t x, int round) {
    return detail::spn_tables().subst[static_cast<std::size_t>(round - 1)][x];
}

inline std::uint16_t spn_inverse_substitute(std::uint16_t x, int round) {
    return detail::spn_tables().inv_subst[static_cast<std::size_t>(round - 1)][x];
}

class BasicSpn {
public:
    static constexpr int kRounds = 4;
    using KeySchedule = std::array<std::uint16_t, 5>;

    explicit BasicSpn(const KeySchedule& subkeys) : subkeys_(subkeys) {}

    static constexpr int block_bits() { return 16; }
    static constexpr int rounds() { return kRounds; }
    const KeySchedule& subkeys() const { return subkeys_; }

    std::uint16_t encrypt(std::uint16_t p) const {
        const auto& t = detail::spn_tables();
        std::uint16_t x = p;
        for (int r = 1; r <= 3; ++r) x = t.perm[t.subst[static_cast<std::size_t>(r - 1)][x ^ subkeys_[static_cast<std::size_t>(r - 1)]]];
        return static_cast<std::uint16_t>(t.subst[3][x ^ subkeys_[3]] ^ subkeys_[4]);
    }

    std::uint16_t decrypt(std::uint16_t c) const {
        const auto& t = detail::spn_tables();
        std::uint16_t x = static_cast<std::uint16_t>(t.inv_subst[3][c ^ subkeys_[4]] ^ subkeys_[3]);
        for (int r = 3; r >= 1; --r)
            x = static_cast<std::uint16_t>(t.inv_subst[static_cast<std::size_t>(r - 1)][t.perm[x]] ^
                                           subkeys_[static_cast<std::size_t>(r - 1)]);
        return x;
    }

    // Round inputs U_1..U_4: the state after each round's key mix, i.e. the
    // input to that round's substitution layer.
    std::array<std::uint16_t, 4> encrypt_trace(std::uint16_t p) const {
        const auto& t = detail::spn_tables();
        std::array<std::uint16_t, 4> u{};
        std::uint16_t x = p;
        for (int r = 1; r <= 3; ++r) {
            u[static_cast<std::size_t>(r - 1)] = static_cast<std::uint16_t>(x ^ subkeys_[static_cast<std::size_t>(r - 1)]);
            x = t.perm[t.subst[static_cast<std::size_t>(r - 1)][u[static_cast<std::size_t>(r - 1)]]];
        }
        u[3] = static_cast<std::uint16_t>(x ^ subkeys_[3]);
        return u;
    }

    // Undo the final key mix and the last substitution layer under a guessed
    // whitening key, recovering the candidate round-4 input.
    static std::uint16_t partial_decrypt_last_round(std::uint16_t c, std::uint16_t k5_guess) {
        return detail::spn_tables().inv_subst[3][c ^ k5_guess];
    }

    std::uint64_t encrypt_block(std::uint64_t p) const { return encrypt(static_cast<std::uint16_t>(p)); }
    std::uint64_t decrypt_block(std::uint64_t c) const { return decrypt(static_cast<std::uint16_t>(c)); }

private:
    KeySchedule subkeys_;
};

}  // namespace cryptolab
