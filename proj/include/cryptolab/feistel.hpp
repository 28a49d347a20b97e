#pragma once

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cryptolab/finite_math.hpp"
#include "cryptolab/spn.hpp"

namespace cryptolab {

// Feistel iteration on a pair of halves:
//   L_i = R_{i-1}
//   R_i = F(R_{i-1}, K_i) ^ L_{i-1}
// The ciphertext is the final (L, R) pair as produced by the iteration; no
// extra swap is appended, so decryption walks the same relation backwards.
// The round function takes (half, round key, round index) and need not be
// invertible.
template <std::unsigned_integral Half, typename RoundFn>
class FeistelNetwork {
public:
    FeistelNetwork(std::vector<Half> round_keys, RoundFn f, int half_bits)
        : keys_(std::move(round_keys)), f_(std::move(f)), half_bits_(half_bits) {
        if (keys_.empty()) throw std::invalid_argument("FeistelNetwork: no round keys");
    }

    int block_bits() const { return 2 * half_bits_; }
    int rounds() const { return static_cast<int>(keys_.size()); }
    const std::vector<Half>& subkeys() const { return keys_; }

    std::uint64_t encrypt_block(std::uint64_t p) const {
        auto [l, r] = split(p);
        for (int i = 0; i < rounds(); ++i) {
            const Half nl = r;
            r = static_cast<Half>(f_(r, keys_[static_cast<std::size_t>(i)], i + 1) ^ l);
            l = nl;
        }
        return join(l, r);
    }

    std::uint64_t decrypt_block(std::uint64_t c) const {
        auto [l, r] = split(c);
        for (int i = rounds() - 1; i >= 0; --i) {
            const Half nr = l;
            l = static_cast<Half>(f_(l, keys_[static_cast<std::size_t>(i)], i + 1) ^ r);
            r = nr;
        }
        return join(l, r);
    }

    // (L_i, R_i) for i = 0..rounds; element 0 is the plaintext split.
    std::vector<std::pair<Half, Half>> encrypt_trace(std::uint64_t p) const {
        std::vector<std::pair<Half, Half>> states;
        auto [l, r] = split(p);
        states.emplace_back(l, r);
        for (int i = 0; i < rounds(); ++i) {
            const Half nl = r;
            r = static_cast<Half>(f_(r, keys_[static_cast<std::size_t>(i)], i + 1) ^ l);
            l = nl;
            states.emplace_back(l, r);
        }
        return states;
    }

    // One-round undo under a guessed last-round key. Returns the candidate
    // (L_{R-1}, R_{R-1}); the second half equals the ciphertext left half and
    // does not depend on the guess.
    std::pair<Half, Half> partial_decrypt_last_round(std::uint64_t c, Half k_guess) const {
        auto [lc, rc] = split(c);
        const Half l_prev = static_cast<Half>(f_(lc, k_guess, rounds()) ^ rc);
        return {l_prev, lc};
    }

    Half round_function(Half x, Half key, int round) const { return f_(x, key, round); }

    std::pair<Half, Half> split(std::uint64_t block) const {
        return {static_cast<Half>(block >> half_bits_),
                static_cast<Half>(block & bit_mask(half_bits_))};
    }

    std::uint64_t join(Half l, Half r) const {
        return (static_cast<std::uint64_t>(l) << half_bits_) | static_cast<std::uint64_t>(r);
    }

private:
    std::vector<Half> keys_;
    RoundFn f_;
    int half_bits_;
};

// --- concrete round functions -------------------------------------------------

// Round function shared with the SPN: key mix, round-dependent substitution,
// bit transposition.
struct SpnRoundFunction {
    std::uint16_t operator()(std::uint16_t x, std::uint16_t k, int round) const {
        const auto& t = detail::spn_tables();
        return t.perm[t.subst[static_cast<std::size_t>(round - 1)][x ^ k]];
    }
};

// 8-bit core built on the generated Rijndael S-box.
struct RijndaelRoundFunction {
    std::uint8_t operator()(std::uint8_t x, std::uint8_t k, int) const {
        return rijndael_sbox().forward[static_cast<std::uint8_t>(x ^ k)];
    }
};

// 8-bit core of low algebraic degree: cube of the keyed input in GF(2^8).
struct CubeRoundFunction {
    std::uint8_t operator()(std::uint8_t x, std::uint8_t k, int) const {
        return gf_cube(static_cast<std::uint8_t>(x ^ k));
    }
};

using Feistel32 = FeistelNetwork<std::uint16_t, SpnRoundFunction>;
using HypCipher = FeistelNetwork<std::uint8_t, RijndaelRoundFunction>;
using CubeCipher = FeistelNetwork<std::uint8_t, CubeRoundFunction>;

inline Feistel32 make_feistel32(const std::vector<std::uint16_t>& keys) {
    if (keys.size() != 4) throw std::invalid_argument("feistel32 uses exactly 4 round keys");
    return Feistel32(keys, SpnRoundFunction{}, 16);
}

inline HypCipher make_hypcipher(const std::vector<std::uint8_t>& keys) {
    if (keys.size() < 2 || keys.size() > 4)
        throw std::invalid_argument("hypcipher supports 2..4 rounds");
    return HypCipher(keys, RijndaelRoundFunction{}, 8);
}

inline CubeCipher make_cubecipher(const std::vector<std::uint8_t>& keys) {
    if (keys.size() < 2 || keys.size() > 3)
        throw std::invalid_argument("cubecipher supports 2..3 rounds");
    return CubeCipher(keys, CubeRoundFunction{}, 8);
}

}  // namespace cryptolab
