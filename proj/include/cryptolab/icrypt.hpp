#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "cryptolab/bits.hpp"

namespace cryptolab {

// Sum of the bits of one byte with 0 read as -1; range [-8, 8].
inline constexpr int bipolar_byte_sum(std::uint8_t byte) {
    return 2 * std::popcount(static_cast<unsigned>(byte)) - 8;
}

enum class KeyInjection {
    Bias,   // round key drives the per-neuron bias links
    Input,  // round key extends the input layer with its own weights
};

// Seed the published designs derive from; overridable for testing.
inline constexpr std::uint64_t kIcryptDesignSeed = 0x1C64C0DE5EED2004ull;

// Single-layer hard-limiter core: neuron j fires when the weighted bipolar
// sum of the inputs (plus the key contribution) is positive. Weights are
// design-time constants drawn from design_seed; the simplified mode restricts
// them to {-1, +1} which admits an XNOR/popcount evaluation.
struct IcryptParams {
    KeyInjection variant = KeyInjection::Bias;
    int half_bits = 32;
    int rounds = 10;
    bool simplified = false;
    std::uint64_t design_seed = kIcryptDesignSeed;

    std::vector<std::vector<int>> weights;      // [neuron][data input]
    std::vector<std::vector<int>> key_weights;  // Input variant only
    std::vector<int> bias_weights;              // Bias variant only

    // simplified weights as sign masks, bit set meaning +1; indexed MSB-first
    std::vector<std::uint64_t> weight_masks;
    std::vector<std::uint64_t> key_weight_masks;
    std::uint64_t bias_mask = 0;

    static IcryptParams generate(KeyInjection variant = KeyInjection::Bias, bool simplified = false,
                                 int rounds = 10, std::uint64_t design_seed = kIcryptDesignSeed,
                                 int half_bits = 32) {
        if (rounds < 2 || rounds % 2 != 0) throw std::invalid_argument("rounds must be even and >= 2");
        if (half_bits < 8 || half_bits > 64 || half_bits % 8 != 0)
            throw std::invalid_argument("half width must be a byte multiple in [8, 64]");
        IcryptParams p;
        p.variant = variant;
        p.half_bits = half_bits;
        p.rounds = rounds;
        p.simplified = simplified;
        p.design_seed = design_seed;
        std::mt19937_64 rng(design_seed);
        // draw from the raw 64-bit stream so every platform sees one design
        const auto draw = [&rng, simplified]() {
            return simplified ? ((rng() & 1u) ? 1 : -1) : static_cast<int>(rng() & 0xFF) - 128;
        };
        const int n = half_bits;
        p.weights.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
        for (auto& row : p.weights)
            for (auto& w : row) w = draw();
        if (variant == KeyInjection::Bias) {
            p.bias_weights.resize(static_cast<std::size_t>(n));
            for (auto& b : p.bias_weights) b = draw();
        } else {
            p.key_weights.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
            for (auto& row : p.key_weights)
                for (auto& w : row) w = draw();
        }
        if (simplified) p.build_masks();
        return p;
    }

    void build_masks() {
        const int n = half_bits;
        const auto row_mask = [n](const std::vector<int>& row) {
            std::uint64_t m = 0;
            for (int i = 0; i < n; ++i)
                if (row[static_cast<std::size_t>(i)] > 0) m |= std::uint64_t{1} << (n - 1 - i);
            return m;
        };
        weight_masks.clear();
        for (const auto& row : weights) weight_masks.push_back(row_mask(row));
        key_weight_masks.clear();
        for (const auto& row : key_weights) key_weight_masks.push_back(row_mask(row));
        bias_mask = bias_weights.empty() ? 0 : row_mask(bias_weights);
    }
};

namespace detail {

inline int bipolar_popcount(std::uint64_t agreement, int width) {
    // byte-table realization of the bipolar sum
    static constexpr auto table = [] {
        std::array<int, 256> t{};
        for (int b = 0; b < 256; ++b) t[static_cast<std::size_t>(b)] = bipolar_byte_sum(static_cast<std::uint8_t>(b));
        return t;
    }();
    int sum = 0;
    for (int consumed = 0; consumed < width; consumed += 8) {
        sum += table[agreement & 0xFF];
        agreement >>= 8;
    }
    return sum;
}

}  // namespace detail

// Direct weighted-sum evaluation; works for any integer weights.
inline std::uint64_t icrypt_core_direct(std::uint64_t input, std::uint64_t round_key, const IcryptParams& p) {
    const int n = p.half_bits;
    std::uint64_t out = 0;
    for (int j = 0; j < n; ++j) {
        long long v = 0;
        const auto& row = p.weights[static_cast<std::size_t>(j)];
        for (int i = 0; i < n; ++i) {
            const int x = ((input >> (n - 1 - i)) & 1u) ? 1 : -1;
            v += row[static_cast<std::size_t>(i)] * x;
        }
        if (p.variant == KeyInjection::Bias) {
            const int kj = ((round_key >> (n - 1 - j)) & 1u) ? 1 : -1;
            v += p.bias_weights[static_cast<std::size_t>(j)] * kj;
        } else {
            const auto& krow = p.key_weights[static_cast<std::size_t>(j)];
            for (int i = 0; i < n; ++i) {
                const int k = ((round_key >> (n - 1 - i)) & 1u) ? 1 : -1;
                v += krow[static_cast<std::size_t>(i)] * k;
            }
        }
        if (v > 0) out |= std::uint64_t{1} << (n - 1 - j);  // v == 0 resolves to 0
    }
    return out;
}

// XNOR/popcount path for the {-1, +1} weight restriction: the product of two
// bipolar values is +1 exactly when the underlying bits agree.
inline std::uint64_t icrypt_core_xnor(std::uint64_t input, std::uint64_t round_key, const IcryptParams& p) {
    const int n = p.half_bits;
    const std::uint64_t mask = bit_mask(n);
    std::uint64_t out = 0;
    for (int j = 0; j < n; ++j) {
        int v = detail::bipolar_popcount(~(input ^ p.weight_masks[static_cast<std::size_t>(j)]) & mask, n);
        if (p.variant == KeyInjection::Bias) {
            const int kbit = static_cast<int>((round_key >> (n - 1 - j)) & 1u);
            const int bbit = static_cast<int>((p.bias_mask >> (n - 1 - j)) & 1u);
            v += kbit == bbit ? 1 : -1;
        } else {
            v += detail::bipolar_popcount(~(round_key ^ p.key_weight_masks[static_cast<std::size_t>(j)]) & mask, n);
        }
        if (v > 0) out |= std::uint64_t{1} << (n - 1 - j);
    }
    return out;
}

inline std::uint64_t icrypt_core(std::uint64_t input, std::uint64_t round_key, const IcryptParams& p) {
    return p.simplified ? icrypt_core_xnor(input, round_key, p) : icrypt_core_direct(input, round_key, p);
}

// --- key schedule --------------------------------------------------------------

namespace detail {

inline std::uint64_t icrypt_encrypt_with(const IcryptParams& p, std::uint64_t block,
                                         const std::vector<std::uint64_t>& round_keys) {
    const int n = p.half_bits;
    std::uint64_t l = block >> n;
    std::uint64_t r = block & bit_mask(n);
    for (const std::uint64_t k : round_keys) {
        const std::uint64_t nl = r;
        r = icrypt_core(r ^ k, k, p) ^ l;
        l = nl;
    }
    return (l << n) | r;
}

}  // namespace detail

// Self-referential schedule: split, push each half through the core keyed by
// the other, fold back with XOR, emit, repeat. A step producing an all-zero
// half replaces the running key by a two-round encryption of it under the
// original user key and is retried, so no round key is ever all-zero.
inline std::vector<std::uint64_t> icrypt_key_schedule(std::uint64_t user_key, const IcryptParams& p) {
    const int n = p.half_bits;
    const std::uint64_t half_mask = bit_mask(n);
    const std::vector<std::uint64_t> rescue_keys{user_key >> n, user_key & half_mask};
    std::vector<std::uint64_t> keys;
    keys.reserve(static_cast<std::size_t>(p.rounds));
    std::uint64_t current = user_key;
    int stuck = 0;
    while (static_cast<int>(keys.size()) < p.rounds) {
        const std::uint64_t a = current >> n;
        const std::uint64_t b = current & half_mask;
        const std::uint64_t a2 = icrypt_core(a, b, p) ^ a;
        const std::uint64_t b2 = icrypt_core(b, a, p) ^ b;
        if (a2 == 0 || b2 == 0) {
            current = detail::icrypt_encrypt_with(p, current, rescue_keys);
            if (++stuck > 64) throw std::runtime_error("key schedule failed to escape a zero half");
            continue;
        }
        stuck = 0;
        keys.push_back(a2);
        keys.push_back(b2);
        current = (a2 << n) | b2;
    }
    keys.resize(static_cast<std::size_t>(p.rounds));
    return keys;
}

// --- the cipher ------------------------------------------------------------------

class Icrypt {
public:
    Icrypt(std::uint64_t user_key, IcryptParams params)
        : params_(std::move(params)), schedule_(icrypt_key_schedule(user_key, params_)) {}

    int block_bits() const { return 2 * params_.half_bits; }
    int rounds() const { return params_.rounds; }
    const IcryptParams& params() const { return params_; }
    const std::vector<std::uint64_t>& schedule() const { return schedule_; }

    std::uint64_t encrypt_block(std::uint64_t p) const { return detail::icrypt_encrypt_with(params_, p, schedule_); }

    std::uint64_t decrypt_block(std::uint64_t c) const {
        const int n = params_.half_bits;
        std::uint64_t l = c >> n;
        std::uint64_t r = c & bit_mask(n);
        for (auto it = schedule_.rbegin(); it != schedule_.rend(); ++it) {
            const std::uint64_t nr = l;
            l = icrypt_core(l ^ *it, *it, params_) ^ r;
            r = nr;
        }
        return (l << n) | r;
    }

private:
    IcryptParams params_;
    std::vector<std::uint64_t> schedule_;
};

}  // namespace cryptolab
