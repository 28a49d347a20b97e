#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cryptolab/bits.hpp"
#include "cryptolab/feistel.hpp"
#include "cryptolab/parallel.hpp"
#include "cryptolab/rational.hpp"
#include "cryptolab/spn.hpp"

namespace cryptolab {

// --- difference distribution tables ------------------------------------------

struct DifferenceDistributionTable {
    std::string sbox_id;
    std::array<std::array<int, 16>, 16> counts{};
    bool input_bijective = true;

    int row_sum(int dx) const {
        int s = 0;
        for (int dy = 0; dy < 16; ++dy) s += counts[static_cast<std::size_t>(dx)][static_cast<std::size_t>(dy)];
        return s;
    }
    int col_sum(int dy) const {
        int s = 0;
        for (int dx = 0; dx < 16; ++dx) s += counts[static_cast<std::size_t>(dx)][static_cast<std::size_t>(dy)];
        return s;
    }
    // largest entry outside the trivial (0,0) cell
    int max_nontrivial() const {
        int m = 0;
        for (int dx = 1; dx < 16; ++dx)
            for (int dy = 0; dy < 16; ++dy) m = std::max(m, counts[static_cast<std::size_t>(dx)][static_cast<std::size_t>(dy)]);
        return m;
    }
};

inline DifferenceDistributionTable build_ddt(const std::array<std::uint8_t, 16>& sbox, std::string id = {}) {
    DifferenceDistributionTable t;
    t.sbox_id = std::move(id);
    std::array<bool, 16> seen{};
    for (std::uint8_t v : sbox) {
        if (v > 0xF || seen[v]) t.input_bijective = false;
        else seen[v] = true;
    }
    for (int dx = 0; dx < 16; ++dx)
        for (int x = 0; x < 16; ++x) {
            const int dy = sbox[static_cast<std::size_t>(x)] ^ sbox[static_cast<std::size_t>(x ^ dx)];
            ++t.counts[static_cast<std::size_t>(dx)][static_cast<std::size_t>(dy)];
        }
    return t;
}

// --- differential characteristics --------------------------------------------

struct ActiveSbox {
    int round = 0;
    int box = 0;  // 1..4, box 1 covering the most significant nibble
    std::uint8_t in_diff = 0;
    std::uint8_t out_diff = 0;
    int count = 0;  // occurrences out of 16
};

struct DifferentialCharacteristic {
    std::uint32_t input_difference = 0;
    // round_differences[i] = difference at the input of round i+1; the last
    // entry is the expected difference entering the attacked round.
    std::vector<std::uint32_t> round_differences;
    std::vector<ActiveSbox> active_sboxes;
    Rational probability{1, 1};
    // one entry per stated assignment that mechanical propagation overrode
    std::vector<std::string> notes;

    std::uint32_t last_round_difference() const { return round_differences.back(); }
};

// A chosen assignment for one active S-box along a path.
struct PathAssignment {
    int round = 0;
    int box = 0;
    std::uint8_t in_diff = 0;
    std::uint8_t out_diff = 0;
};

struct RejectedPath : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// Pushes a 16-bit difference through one substitution layer. The propagated
// input difference of each box is authoritative: a stated assignment whose
// input disagrees is overridden by the most probable table entry for the
// propagated difference (ties resolved toward the smaller output), and the
// override is recorded.
inline std::uint16_t propagate_subst_layer(std::uint16_t delta, int round,
                                           const std::vector<PathAssignment>& path,
                                           DifferentialCharacteristic& chr) {
    std::uint16_t out = 0;
    for (int box = 1; box <= 4; ++box) {
        const std::uint8_t din = get_nibble(delta, box - 1);
        const PathAssignment* claim = nullptr;
        for (const auto& a : path)
            if (a.round == round && a.box == box) claim = &a;
        if (din == 0) {
            if (claim) throw RejectedPath("path assigns S-box " + std::to_string(round) + "," +
                                          std::to_string(box) + " which carries no difference");
            continue;
        }
        if (!claim)
            throw RejectedPath("no difference assignment for active S-box " + std::to_string(round) + "," +
                               std::to_string(box));
        const auto ddt = build_ddt(spn_sbox(round, box));
        std::uint8_t dout;
        if (claim->in_diff == din) {
            dout = claim->out_diff;
            if (ddt.counts[din][dout] == 0)
                throw RejectedPath("zero-probability difference pair for S-box " + std::to_string(round) + "," +
                                   std::to_string(box));
        } else {
            int best = 0;
            dout = 0;
            for (int dy = 0; dy < 16; ++dy)
                if (ddt.counts[din][static_cast<std::size_t>(dy)] > best) {
                    best = ddt.counts[din][static_cast<std::size_t>(dy)];
                    dout = static_cast<std::uint8_t>(dy);
                }
            chr.notes.push_back("round " + std::to_string(round) + " box " + std::to_string(box) +
                                ": stated input difference " + to_hex(claim->in_diff, 4) +
                                " conflicts with propagated difference " + to_hex(din, 4) +
                                "; using table entry " + to_hex(din, 4) + "->" + to_hex(dout, 4));
        }
        const int count = ddt.counts[din][dout];
        chr.active_sboxes.push_back({round, box, din, dout, count});
        chr.probability = chr.probability * Rational{count, 16};
        out = with_nibble(out, box - 1, dout);
    }
    return spn_permute(out);
}

}  // namespace detail

// Characteristic over the first `rounds` rounds of the SPN; the resulting
// difference list ends with the expected input difference of round rounds+1.
inline DifferentialCharacteristic propagate_spn_characteristic(std::uint16_t input_difference,
                                                               const std::vector<PathAssignment>& path,
                                                               int rounds = 3) {
    DifferentialCharacteristic chr;
    chr.input_difference = input_difference;
    std::uint16_t delta = input_difference;
    chr.round_differences.push_back(delta);
    for (int r = 1; r <= rounds; ++r) {
        delta = detail::propagate_subst_layer(delta, r, path, chr);
        chr.round_differences.push_back(delta);
    }
    return chr;
}

// Same construction through the Feistel update: the round-function output
// difference lands on the right half XORed with the old left difference.
inline DifferentialCharacteristic propagate_feistel_characteristic(std::uint32_t input_difference,
                                                                   const std::vector<PathAssignment>& path,
                                                                   int rounds = 3) {
    DifferentialCharacteristic chr;
    chr.input_difference = input_difference;
    auto dl = static_cast<std::uint16_t>(input_difference >> 16);
    auto dr = static_cast<std::uint16_t>(input_difference & 0xFFFF);
    chr.round_differences.push_back(input_difference);
    for (int r = 1; r <= rounds; ++r) {
        const std::uint16_t f_out = detail::propagate_subst_layer(dr, r, path, chr);
        const std::uint16_t new_r = static_cast<std::uint16_t>(f_out ^ dl);
        dl = dr;
        dr = new_r;
        chr.round_differences.push_back((static_cast<std::uint32_t>(dl) << 16) | dr);
    }
    return chr;
}

// The characteristic used throughout the SPN attacks: difference 00F0 in the
// third nibble, five active S-boxes, probability 3/1024.
inline std::vector<PathAssignment> spn_00f0_path() {
    return {{1, 3, 0xF, 0x4}, {2, 2, 0x2, 0x7}, {3, 2, 0x4, 0x3}, {3, 3, 0xB, 0x1}, {3, 4, 0x4, 0x7}};
}

inline DifferentialCharacteristic spn_00f0_characteristic() {
    return propagate_spn_characteristic(0x00F0, spn_00f0_path(), 3);
}

// Same S-box assignments driven through the 32-bit Feistel structure.
inline DifferentialCharacteristic feistel32_000000f0_characteristic() {
    return propagate_feistel_characteristic(0x000000F0, spn_00f0_path(), 3);
}

// --- empirical verification ---------------------------------------------------

// Fraction of chosen pairs whose difference entering the attacked round equals
// the characteristic's expectation, measured by forward trace under a random
// key. Cross-checks the independence assumption behind the probability product.
inline Rational empirical_characteristic_probability(const BasicSpn& cipher,
                                                     const DifferentialCharacteristic& chr,
                                                     int samples, std::uint64_t seed) {
    if (samples < 1000) throw std::invalid_argument("empirical probability needs >= 1000 samples");
    std::mt19937_64 rng(seed);
    const auto dx = static_cast<std::uint16_t>(chr.input_difference);
    const auto expected = static_cast<std::uint16_t>(chr.last_round_difference());
    const std::size_t round_index = chr.round_differences.size() - 1;
    std::int64_t hits = 0;
    for (int i = 0; i < samples; ++i) {
        const auto p1 = static_cast<std::uint16_t>(rng());
        const auto u1 = cipher.encrypt_trace(p1)[round_index];
        const auto u2 = cipher.encrypt_trace(static_cast<std::uint16_t>(p1 ^ dx))[round_index];
        if ((u1 ^ u2) == expected) ++hits;
    }
    return Rational{hits, samples};
}

inline Rational empirical_characteristic_probability(const Feistel32& cipher,
                                                     const DifferentialCharacteristic& chr,
                                                     int samples, std::uint64_t seed) {
    if (samples < 1000) throw std::invalid_argument("empirical probability needs >= 1000 samples");
    std::mt19937_64 rng(seed);
    const std::uint32_t dx = chr.input_difference;
    const std::uint32_t expected = chr.last_round_difference();
    const std::size_t round_index = chr.round_differences.size() - 1;
    std::int64_t hits = 0;
    for (int i = 0; i < samples; ++i) {
        const auto p1 = static_cast<std::uint32_t>(rng());
        const auto s1 = cipher.encrypt_trace(p1)[round_index];
        const auto s2 = cipher.encrypt_trace(p1 ^ dx)[round_index];
        const std::uint32_t d = (static_cast<std::uint32_t>(s1.first ^ s2.first) << 16) |
                                static_cast<std::uint32_t>(s1.second ^ s2.second);
        if (d == expected) ++hits;
    }
    return Rational{hits, samples};
}

// --- chosen pairs and right-pair counting --------------------------------------

struct ChosenPair {
    std::uint64_t p1 = 0, c1 = 0;
    std::uint64_t p2 = 0, c2 = 0;
};

template <typename Cipher>
std::vector<ChosenPair> generate_chosen_pairs(const Cipher& cipher, std::uint64_t input_difference, int count,
                                              std::mt19937_64& rng) {
    std::vector<ChosenPair> pairs;
    pairs.reserve(static_cast<std::size_t>(count));
    const std::uint64_t mask = bit_mask(cipher.block_bits());
    for (int i = 0; i < count; ++i) {
        const std::uint64_t p1 = rng() & mask;
        const std::uint64_t p2 = p1 ^ input_difference;
        pairs.push_back({p1, cipher.encrypt_block(p1), p2, cipher.encrypt_block(p2)});
    }
    return pairs;
}

// Right-pair counter for a fixed pair set, reusable per candidate subkey.
// attacked_round selects the substitution layer undone by the partial
// decryption; pre_permute additionally undoes the bit transposition, which is
// what a peeled (reduced-round) SPN needs.
class SpnDiffTarget {
public:
    SpnDiffTarget(const DifferentialCharacteristic& chr, const std::vector<ChosenPair>& pairs,
                  int attacked_round = 4, bool pre_permute = false)
        : attacked_round_(attacked_round), pre_permute_(pre_permute) {
        expected_ = static_cast<std::uint16_t>(chr.last_round_difference());
        const auto dx = static_cast<std::uint16_t>(chr.input_difference);
        cts_.reserve(pairs.size());
        for (const auto& pr : pairs) {
            if (static_cast<std::uint16_t>(pr.p1 ^ pr.p2) != dx)
                throw std::invalid_argument("pair input difference does not match the characteristic");
            cts_.emplace_back(static_cast<std::uint16_t>(pr.c1), static_cast<std::uint16_t>(pr.c2));
        }
    }

    int count_for_key(std::uint16_t key) const {
        const auto& t = detail::spn_tables();
        const auto& inv = t.inv_subst[static_cast<std::size_t>(attacked_round_ - 1)];
        int d = 0;
        if (pre_permute_) {
            for (const auto& [c1, c2] : cts_)
                if ((inv[t.perm[c1 ^ key]] ^ inv[t.perm[c2 ^ key]]) == expected_) ++d;
        } else {
            for (const auto& [c1, c2] : cts_)
                if ((inv[c1 ^ key] ^ inv[c2 ^ key]) == expected_) ++d;
        }
        return d;
    }

    int pair_total() const { return static_cast<int>(cts_.size()); }

private:
    std::vector<std::pair<std::uint16_t, std::uint16_t>> cts_;
    std::uint16_t expected_;
    int attacked_round_;
    bool pre_permute_;
};

class FeistelDiffTarget {
public:
    FeistelDiffTarget(const Feistel32& cipher, const DifferentialCharacteristic& chr,
                      const std::vector<ChosenPair>& pairs)
        : rounds_(cipher.rounds()) {
        const std::uint32_t exp = chr.last_round_difference();
        expected_keyed_ = static_cast<std::uint16_t>(exp >> 16);
        const auto expected_free = static_cast<std::uint16_t>(exp & 0xFFFF);
        total_ = static_cast<int>(pairs.size());
        for (const auto& pr : pairs) {
            if (static_cast<std::uint32_t>(pr.p1 ^ pr.p2) != chr.input_difference)
                throw std::invalid_argument("pair input difference does not match the characteristic");
            const auto lc1 = static_cast<std::uint16_t>(pr.c1 >> 16);
            const auto lc2 = static_cast<std::uint16_t>(pr.c2 >> 16);
            // key-free half first: the ciphertext left half is the previous
            // round's right half regardless of the guess
            if (static_cast<std::uint16_t>(lc1 ^ lc2) != expected_free) continue;
            const auto drc = static_cast<std::uint16_t>((pr.c1 ^ pr.c2) & 0xFFFF);
            filtered_.push_back({lc1, lc2, drc});
        }
    }

    int count_for_key(std::uint16_t key) const {
        const SpnRoundFunction f{};
        int d = 0;
        for (const auto& [lc1, lc2, drc] : filtered_)
            if ((f(lc1, key, rounds_) ^ f(lc2, key, rounds_) ^ drc) == expected_keyed_) ++d;
        return d;
    }

    int pair_total() const { return total_; }

private:
    std::vector<std::array<std::uint16_t, 3>> filtered_;
    std::uint16_t expected_keyed_;
    int total_;
    int rounds_;
};

// --- the classical counting attack ---------------------------------------------

struct DiffAttackConfig {
    DifferentialCharacteristic characteristic;
    int pair_count = 0;       // N_D; when 0, derived as ceil(rule_constant / P_D)
    int rule_constant = 15;   // c in N_D = c / P_D
    std::uint16_t target_subkey_mask = 0xFFFF;
    int workers = 1;

    int effective_pair_count() const {
        if (pair_count > 0) return pair_count;
        const auto& p = characteristic.probability;
        return static_cast<int>((static_cast<std::int64_t>(rule_constant) * p.den + p.num - 1) / p.num);
    }
};

struct KeyCount {
    std::uint16_t key = 0;
    int count = 0;
};

namespace detail {

template <typename Target>
std::vector<KeyCount> ranked_key_counts(const Target& target, std::uint16_t mask, int workers) {
    std::vector<KeyCount> table(65536);
    parallel_for(65536, workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const auto key = static_cast<std::uint16_t>(k);
            table[k].key = key;
            table[k].count = (key & ~mask) == 0 ? target.count_for_key(key) : 0;
        }
    });
    if (mask != 0xFFFF)
        std::erase_if(table, [mask](const KeyCount& kc) { return (kc.key & ~mask) != 0; });
    std::stable_sort(table.begin(), table.end(), [](const KeyCount& a, const KeyCount& b) {
        return a.count != b.count ? a.count > b.count : a.key < b.key;
    });
    return table;
}

}  // namespace detail

inline std::vector<KeyCount> differential_attack(const BasicSpn&, const DiffAttackConfig& config,
                                                 const std::vector<ChosenPair>& pairs) {
    const SpnDiffTarget target(config.characteristic, pairs);
    return detail::ranked_key_counts(target, config.target_subkey_mask, config.workers);
}

inline std::vector<KeyCount> differential_attack(const Feistel32& cipher, const DiffAttackConfig& config,
                                                 const std::vector<ChosenPair>& pairs) {
    const FeistelDiffTarget target(cipher, config.characteristic, pairs);
    return detail::ranked_key_counts(target, config.target_subkey_mask, config.workers);
}

// Keys the Feistel right-pair count cannot tell apart. Every counted pair
// carries the characteristic's last-round input difference, so a key nibble
// facing an inactive box never enters the check, and an active nibble can be
// XORed with its input difference without changing any S-box output pair.
// The count attack therefore pins the subkey exactly to this class.
inline bool feistel_keys_count_equivalent(std::uint16_t a, std::uint16_t b,
                                          const DifferentialCharacteristic& chr) {
    const auto last_in = static_cast<std::uint16_t>(chr.last_round_difference() & 0xFFFF);
    for (int nib = 0; nib < 4; ++nib) {
        const std::uint8_t d = get_nibble(last_in, nib);
        if (d == 0) continue;
        const std::uint8_t an = get_nibble(a, nib);
        const std::uint8_t bn = get_nibble(b, nib);
        if (an != bn && (an ^ bn) != d) return false;
    }
    return true;
}

}  // namespace cryptolab
