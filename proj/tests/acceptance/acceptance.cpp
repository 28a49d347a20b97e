// Acceptance suite: every exit criterion as one pass/fail line, runnable
// together (no arguments) or per criterion id (e.g. "./acceptance 5").

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "cryptolab/avalanche.hpp"
#include "cryptolab/differential.hpp"
#include "cryptolab/feistel.hpp"
#include "cryptolab/finite_math.hpp"
#include "cryptolab/ga_attack.hpp"
#include "cryptolab/genetic.hpp"
#include "cryptolab/icrypt.hpp"
#include "cryptolab/interpolation.hpp"
#include "cryptolab/modes.hpp"
#include "cryptolab/nn_attack.hpp"
#include "cryptolab/spn.hpp"

namespace {

using namespace cryptolab;

struct Outcome {
    bool passed = false;
    std::string detail;
};

// --- shared fixtures -------------------------------------------------------

constexpr std::uint64_t kAttackSeeds[25] = {401, 402, 403, 404, 405, 406, 407, 408, 409, 410, 411, 412, 413,
                                            414, 415, 416, 417, 418, 419, 420, 421, 422, 423, 424, 425};
constexpr std::uint64_t kClassicalSeeds[20] = {1,  2,  3,  4,  5,  6,  7,  8,  9,  10,
                                               11, 12, 13, 14, 15, 16, 17, 18, 19, 20};
constexpr std::uint64_t kBenchmarkSeeds[25] = {1,  2,  3,  4,  5,  6,  7,  8,  9,  10, 11, 12, 13,
                                               14, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24, 25};
constexpr std::uint64_t kXorSeeds[10] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
constexpr std::uint64_t kNnSeeds[10] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
constexpr std::uint64_t kInterpSeeds[20] = {41, 42, 43, 44, 45, 46, 47, 48, 49, 50,
                                            51, 52, 53, 54, 55, 56, 57, 58, 59, 60};

BasicSpn::KeySchedule spn_keys_from(std::mt19937_64& rng) {
    BasicSpn::KeySchedule keys;
    for (auto& k : keys) k = static_cast<std::uint16_t>(rng());
    return keys;
}

std::vector<std::uint16_t> feistel_keys_from(std::mt19937_64& rng) {
    std::vector<std::uint16_t> keys(4);
    for (auto& k : keys) k = static_cast<std::uint16_t>(rng());
    return keys;
}

// --- criterion 1: DDT exactness ---------------------------------------------

Outcome criterion_ddt() {
    // recomputed print of the first S-box's table; the thesis print has two
    // typesetting defects that break its own row/column laws
    static constexpr int expected[16][16] = {
        {16, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
        {0, 0, 0, 2, 0, 0, 0, 2, 0, 2, 4, 0, 4, 2, 0, 0},
        {0, 0, 0, 2, 0, 6, 2, 2, 0, 2, 0, 0, 0, 0, 2, 0},
        {0, 0, 2, 0, 2, 0, 0, 0, 0, 4, 2, 0, 2, 0, 0, 4},
        {0, 0, 0, 2, 0, 0, 6, 0, 0, 2, 0, 4, 2, 0, 0, 0},
        {0, 4, 0, 0, 0, 2, 2, 0, 0, 0, 4, 0, 2, 0, 0, 2},
        {0, 0, 0, 4, 0, 4, 0, 0, 0, 0, 0, 0, 2, 2, 2, 2},
        {0, 0, 2, 2, 2, 0, 2, 0, 0, 2, 2, 0, 0, 0, 0, 4},
        {0, 0, 0, 0, 0, 0, 2, 2, 0, 0, 0, 4, 0, 4, 2, 2},
        {0, 2, 0, 0, 2, 0, 0, 4, 2, 0, 2, 2, 2, 0, 0, 0},
        {0, 2, 2, 0, 0, 0, 0, 0, 6, 0, 0, 2, 0, 0, 4, 0},
        {0, 0, 8, 0, 0, 2, 0, 2, 0, 0, 0, 0, 0, 2, 0, 2},
        {0, 2, 0, 0, 2, 2, 2, 0, 0, 0, 0, 2, 0, 6, 0, 0},
        {0, 4, 0, 0, 0, 0, 0, 4, 2, 0, 2, 0, 2, 0, 2, 0},
        {0, 0, 2, 4, 2, 0, 0, 0, 6, 0, 0, 0, 0, 0, 2, 0},
        {0, 2, 0, 0, 6, 0, 0, 0, 0, 4, 0, 2, 0, 0, 2, 0},
    };
    const auto ddt = build_ddt(spn_sbox(1, 1), "S11");
    for (int dx = 0; dx < 16; ++dx)
        for (int dy = 0; dy < 16; ++dy)
            if (ddt.counts[dx][dy] != expected[dx][dy])
                return {false, "S11 table mismatch at (" + to_hex(dx, 4) + "," + to_hex(dy, 4) + ")"};
    if (ddt.counts[0xB][0x2] != 8 || ddt.max_nontrivial() != 8) return {false, "largest entry is not 8 at (B,2)"};
    for (int r = 1; r <= 4; ++r)
        for (int b = 1; b <= 4; ++b) {
            const auto t = build_ddt(spn_sbox(r, b));
            for (int i = 0; i < 16; ++i) {
                if (t.row_sum(i) != 16 || t.col_sum(i) != 16) return {false, "row/column sum law violated"};
                for (int j = 0; j < 16; ++j)
                    if (t.counts[i][j] % 2 != 0) return {false, "evenness law violated"};
            }
            if (t.counts[0][0] != 16) return {false, "(0,0) law violated"};
        }
    return {true, "S11 matches the corrected table; structural laws hold for all 16 boxes"};
}

// --- criterion 2: characteristic probabilities --------------------------------

Outcome criterion_characteristics() {
    const auto spn = spn_00f0_characteristic();
    if (!(spn.probability == Rational{3, 1024})) return {false, "SPN P_D != 3/1024"};
    if (spn.last_round_difference() != 0x2157) return {false, "SPN final difference != 2157"};
    const auto feistel = feistel32_000000f0_characteristic();
    if (!(feistel.probability == Rational{3, 1024})) return {false, "Feistel P_D != 3/1024"};
    if (feistel.last_round_difference() != 0x04B40357u) return {false, "Feistel final difference != 04B40357"};
    std::string note = "P_D = 3/1024 and final differences exact";
    if (!spn.notes.empty()) note += "; logged propagation override: " + spn.notes.front();
    return {true, note};
}

// --- criterion 3: empirical differential probability ----------------------------

Outcome criterion_empirical() {
    std::mt19937_64 rng(33001);
    const BasicSpn cipher(spn_keys_from(rng));
    const auto chr = spn_00f0_characteristic();
    const auto p = empirical_characteristic_probability(cipher, chr, 1000000, 33002);
    const double lo = 1.5 / 1024, hi = 6.0 / 1024;
    std::ostringstream detail;
    detail << "measured " << p.num << "/" << p.den << " = " << p.to_double() << " in [" << lo << ", " << hi << "]";
    return {p.to_double() >= lo && p.to_double() <= hi, detail.str()};
}

// --- criterion 4: classical differential attack ----------------------------------

Outcome criterion_classical() {
    int spn_wins = 0, feistel_wins = 0;
    for (const auto seed : kClassicalSeeds) {
        std::mt19937_64 rng(seed);
        const auto keys = spn_keys_from(rng);
        const BasicSpn cipher(keys);
        DiffAttackConfig config{spn_00f0_characteristic()};
        config.pair_count = 5000;
        config.workers = 2;
        const auto pairs = generate_chosen_pairs(cipher, 0x00F0, config.pair_count, rng);
        const auto ranked = differential_attack(cipher, config, pairs);
        const SpnDiffTarget target(config.characteristic, pairs);
        if (target.count_for_key(keys[4]) == ranked.front().count) ++spn_wins;
    }
    for (const auto seed : kClassicalSeeds) {
        std::mt19937_64 rng(mix_seed(seed, 0xF));
        const auto keys = feistel_keys_from(rng);
        const auto cipher = make_feistel32(keys);
        DiffAttackConfig config{feistel32_000000f0_characteristic()};
        config.pair_count = 5120;
        config.workers = 2;
        const auto pairs = generate_chosen_pairs(cipher, 0x000000F0, config.pair_count, rng);
        const auto ranked = differential_attack(cipher, config, pairs);
        const FeistelDiffTarget target(cipher, config.characteristic, pairs);
        if (target.count_for_key(keys[3]) == ranked.front().count) ++feistel_wins;
    }
    std::ostringstream detail;
    detail << "true subkey at the maximum count: SPN " << spn_wins << "/20, Feistel " << feistel_wins << "/20";
    return {spn_wins >= 18 && feistel_wins >= 18, detail.str()};
}

// --- criterion 5: GA attack success and budget --------------------------------------

Outcome criterion_ga_attack() {
    int spn_wins = 0, feistel_wins = 0, sweep_failures = 0;
    std::int64_t max_evals = 0;
    for (const auto seed : kAttackSeeds) {
        std::mt19937_64 rng(seed);
        const auto keys = spn_keys_from(rng);
        const BasicSpn cipher(keys);
        GaAttackConfig config{spn_00f0_characteristic()};
        config.ga.seed = mix_seed(seed, 2);
        const auto pairs = generate_chosen_pairs(cipher, 0x00F0, 5000, rng);
        const SpnDiffTarget target(config.characteristic, pairs);
        const auto result = ga_differential_attack(config, target);
        max_evals = std::max(max_evals, result.keys_evaluated);
        if (result.keys_evaluated > 16384) return {false, "budget exceeded"};
        if (result.recovered_subkey == keys[4]) ++spn_wins;
    }
    for (const auto seed : kAttackSeeds) {
        std::mt19937_64 rng(mix_seed(seed, 0xF));
        const auto keys = feistel_keys_from(rng);
        const auto cipher = make_feistel32(keys);
        GaAttackConfig config{feistel32_000000f0_characteristic()};
        config.ga.seed = mix_seed(seed, 3);
        const auto pairs = generate_chosen_pairs(cipher, 0x000000F0, 5120, rng);
        const FeistelDiffTarget target(cipher, config.characteristic, pairs);
        const auto result = ga_differential_attack(config, target);
        max_evals = std::max(max_evals, result.keys_evaluated);
        if (result.keys_evaluated > 16384) return {false, "budget exceeded"};
        // the count check pins the Feistel subkey to its equivalence class
        if (feistel_keys_count_equivalent(result.recovered_subkey, keys[3], config.characteristic))
            ++feistel_wins;
    }
    for (const auto seed : kAttackSeeds) {
        std::mt19937_64 rng(seed);
        const auto keys = spn_keys_from(rng);
        const BasicSpn cipher(keys);
        GaAttackConfig config{spn_00f0_characteristic()};
        const std::vector<int> cs{3};
        const auto rows = pair_count_sweep(cipher, keys[4], config, cs, seed,
                                           [](const auto& chr, const auto& pairs) {
                                               return SpnDiffTarget(chr, pairs);
                                           });
        if (!rows.front().converged) ++sweep_failures;
    }
    std::ostringstream detail;
    detail << "SPN exact " << spn_wins << "/25, Feistel class " << feistel_wins
           << "/25, c=3 non-convergence " << sweep_failures << "/25, max evaluations " << max_evals;
    return {spn_wins >= 20 && feistel_wins >= 20 && sweep_failures >= 20 && max_evals <= 16384, detail.str()};
}

// --- criterion 6: GA benchmark -------------------------------------------------------

Outcome criterion_ga_benchmark() {
    // grid oracle replicated with the published arithmetic: float accumulation
    // and the 88/7, 440/7 sine coefficients; the separable scan reaches the
    // same float maximum as the nested grid because float addition of a
    // constant is monotone
    float best1 = -1e9f, best_x1 = 0.0f;
    for (float x1 = -3.0f; x1 <= 12.1f; x1 += 0.0001f) {
        const float t = x1 * std::sin(88.0f / 7.0f * x1);
        if (t > best1) { best1 = t; best_x1 = x1; }
    }
    float best2 = -1e9f, best_x2 = 0.0f;
    for (float x2 = 4.1f; x2 <= 5.8f; x2 += 0.0001f) {
        const float t = x2 * std::sin(440.0f / 7.0f * x2);
        if (t > best2) { best2 = t; best_x2 = x2; }
    }
    const float oracle_max = 21.5f + best1 + best2;
    if (std::abs(oracle_max - 38.9354) > 1e-3) {
        return {false, "grid oracle maximum " + std::to_string(oracle_max) + " not within 1e-3 of 38.9354"};
    }
    if (std::abs(best_x1 - 12.0999) > 1e-3 || std::abs(best_x2 - 5.7227) > 1e-3)
        return {false, "grid oracle argmax off target"};

    int reached = 0;
    for (const auto seed : kBenchmarkSeeds) {
        GaConfig config{.population_size = 50,
                        .chromosome_bits = kBenchmarkChromosomeBits,
                        .max_generations = 200,
                        .crossover_probability = 0.25,
                        .mutation_probability = 0.1,
                        .seed = seed};
        const auto result = run_ga(config, benchmark_fitness);
        if (result.best_ever_fitness >= 36.0) ++reached;
    }

    // roulette frequencies against the published percentages
    const std::vector<double> wheel{169, 576, 64, 361};
    std::mt19937_64 rng(60001);
    std::array<std::int64_t, 4> hits{};
    for (int i = 0; i < 1000000; ++i) ++hits[roulette_select(wheel, rng)];
    for (std::size_t i = 0; i < 4; ++i) {
        const double freq = static_cast<double>(hits[i]) / 1e6;
        if (std::abs(freq - wheel[i] / 1170.0) > 0.01)
            return {false, "roulette frequency off by more than 1%"};
    }

    std::ostringstream detail;
    detail << "oracle max " << oracle_max << " at (" << best_x1 << ", " << best_x2 << "); fitness >= 36 on "
           << reached << "/25 seeds; roulette within 1%";
    return {reached >= 20, detail.str()};
}

// --- criterion 7: backprop correctness --------------------------------------------------

Outcome criterion_backprop() {
    std::mt19937_64 rng(70001);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto net = FeedforwardNetwork::random({2, 3, 2}, rng, 1.0);
        TrainingExample ex{{dist(rng), dist(rng)}, {0.5 * dist(rng) + 0.5, 0.5 * dist(rng) + 0.5}};
        auto updated = net;
        updated.train_example(ex, 0.5);
        const auto err_of = [&ex](const FeedforwardNetwork& n) {
            const auto out = n.forward(ex.input);
            double e = 0.0;
            for (std::size_t k = 0; k < out.size(); ++k) e += 0.5 * (ex.target[k] - out[k]) * (ex.target[k] - out[k]);
            return e;
        };
        const double eps = 1e-5;
        const auto& sizes = net.layer_sizes();
        for (std::size_t l = 0; l + 1 < sizes.size(); ++l)
            for (int j = 0; j < sizes[l + 1]; ++j)
                for (int i = 0; i < sizes[l]; ++i) {
                    const double analytic = -(updated.weight(l, j, i) - net.weight(l, j, i)) / 0.5;
                    auto plus = net, minus = net;
                    plus.weight(l, j, i) += eps;
                    minus.weight(l, j, i) -= eps;
                    const double numeric = (err_of(plus) - err_of(minus)) / (2 * eps);
                    worst = std::max(worst, std::abs(analytic - numeric) /
                                                std::max(1.0, std::abs(analytic) + std::abs(numeric)));
                }
    }
    if (worst >= 1e-5) return {false, "gradient mismatch " + std::to_string(worst)};

    const std::vector<TrainingExample> xor_set{
        {{0.0, 0.0}, {0.0}}, {{0.0, 1.0}, {1.0}}, {{1.0, 0.0}, {1.0}}, {{1.0, 1.0}, {0.0}}};
    int converged = 0;
    for (const auto seed : kXorSeeds) {
        std::mt19937_64 r(seed);
        auto net = FeedforwardNetwork::random({2, 4, 1}, r);
        TrainingConfig config{.learning_rate = 0.5, .epochs = 20000, .target_sse = 0.01, .seed = seed};
        if (train(net, xor_set, config) < 0.01) ++converged;
    }
    std::ostringstream detail;
    detail << "max normalized gradient error " << worst << "; XOR converged " << converged << "/10";
    return {converged >= 8, detail.str()};
}

// --- criterion 8: NN attack ----------------------------------------------------------------

Outcome criterion_nn_attack() {
    int wins2 = 0;
    for (const auto seed : kNnSeeds) {
        std::mt19937_64 rng(seed);
        const auto true_key = static_cast<std::uint8_t>(rng());
        const auto cipher = make_hypcipher({static_cast<std::uint8_t>(rng()), true_key});
        NnAttackConfig config;
        config.rounds = 2;
        config.seed = mix_seed(seed, 7);
        config.workers = 2;
        const auto pairs = generate_known_pairs(cipher, config.total_examples(), rng);
        if (nn_key_ranking_attack(cipher, pairs, config).argmin_key == true_key) ++wins2;
    }

    int wins4 = 0;
    double slowest = 0.0;
    for (const auto seed : kNnSeeds) {
        const auto start = std::chrono::steady_clock::now();
        std::mt19937_64 rng(seed);
        const auto true_key = static_cast<std::uint8_t>(rng());
        const auto cipher = make_hypcipher({static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng()),
                                            static_cast<std::uint8_t>(rng()), true_key});
        NnAttackConfig config;
        config.rounds = 4;
        config.hidden_layers = 2;
        config.seed = mix_seed(seed, 7);
        config.workers = 2;
        const auto pairs = generate_known_pairs(cipher, config.total_examples(), rng);
        if (nn_key_ranking_attack(cipher, pairs, config).argmin_key == true_key) ++wins4;
        slowest = std::max(slowest,
                           std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    std::ostringstream detail;
    detail << "R=2 argmin correct " << wins2 << "/10 (need >= 8); R=4 argmin correct " << wins4
           << "/10 (need >= 6); slowest R=4 sweep " << slowest << "s (budget 900s)";
    return {wins2 >= 8 && wins4 >= 6 && slowest <= 900.0, detail.str()};
}

// --- criterion 9: interpolation attack --------------------------------------------------------

Outcome criterion_interpolation() {
    int survivors_total = 0;
    for (const auto seed : kInterpSeeds) {
        std::mt19937_64 rng(seed);
        const auto true_key = static_cast<std::uint8_t>(rng());
        const auto cipher = make_cubecipher({static_cast<std::uint8_t>(rng()), true_key});
        const auto fixed_left = static_cast<std::uint8_t>(rng());
        const int d = probe_minimal_degree(cipher, fixed_left);
        std::vector<std::uint8_t> xs(256);
        for (int i = 0; i < 256; ++i) xs[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
        std::shuffle(xs.begin(), xs.end(), rng);
        std::vector<std::pair<std::uint16_t, std::uint16_t>> pairs;
        for (int i = 0; i < d + 2; ++i) {  // d+1 fit pairs plus the check pair
            const auto p = static_cast<std::uint16_t>((fixed_left << 8) | xs[static_cast<std::size_t>(i)]);
            pairs.emplace_back(p, static_cast<std::uint16_t>(cipher.encrypt_block(p)));
        }
        const InterpAttackConfig<CubeCipher> config{cipher, d, pairs, 1};
        const auto result = interpolation_attack(config);
        if (!result.table[true_key].survived) return {false, "true key eliminated"};
        survivors_total += static_cast<int>(result.survivors().size());
    }
    const double mean = survivors_total / 20.0;
    std::ostringstream detail;
    detail << "true key survived 20/20; mean survivor count " << mean << " (need <= 4)";
    return {mean <= 4.0, detail.str()};
}

// --- criterion 10: field and Euclid exactness ---------------------------------------------------

Outcome criterion_field() {
    if (gf_inverse(0x0F) != 0xC7) return {false, "gf_inverse(0x0F) != 0xC7"};
    const auto inv = mod_inverse(550, 1759);
    if (!inv || *inv.value != 355) return {false, "mod_inverse(550, 1759) != 355"};
    if (gcd(1512, 797) != 1) return {false, "gcd(1512, 797) != 1"};
    const auto box = generate_rijndael_sbox();
    static constexpr std::uint8_t first_row[16] = {0x63, 0x7C, 0x77, 0x7B, 0xF2, 0x6B, 0x6F, 0xC5,
                                                   0x30, 0x01, 0x67, 0x2B, 0xFE, 0xD7, 0xAB, 0x76};
    for (int i = 0; i < 16; ++i)
        if (box.forward[static_cast<std::size_t>(i)] != first_row[i]) return {false, "S-box head mismatch"};
    if (box.inverse[0x00] != 0x52 || box.inverse[0x63] != 0x00) return {false, "inverse table mismatch"};
    for (int i = 0; i < 256; ++i) {
        if (box.inverse[box.forward[static_cast<std::size_t>(i)]] != i) return {false, "tables are not inverse"};
        if (i > 0 && gf_mul(static_cast<std::uint8_t>(i), gf_inverse(static_cast<std::uint8_t>(i))) != 1)
            return {false, "gf inverse law violated"};
    }
    return {true, "worked-example values and all 512 table entries exact"};
}

// --- criterion 11: modes properties ---------------------------------------------------------------

Outcome criterion_modes() {
    const BasicSpn cipher({0x1A2B, 0x3C4D, 0x5E6F, 0x7081, 0x92A3});
    std::mt19937_64 rng(110001);
    const auto random_bits = [&rng](std::size_t n) {
        BitStream bits(n);
        for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1u);
        return bits;
    };

    for (const Mode mode : {Mode::Ecb, Mode::Cbc, Mode::Cfb, Mode::Ofb, Mode::Ctr})
        for (int trial = 0; trial < 4; ++trial) {
            ModeState state{mode, mode == Mode::Ecb ? std::nullopt : std::make_optional<std::uint64_t>(rng() & 0xFFFF), 0};
            if (mode == Mode::Cfb || mode == Mode::Ofb) state.segment_bits = trial % 2 ? 4 : 16;
            const int unit = (mode == Mode::Cfb || mode == Mode::Ofb) ? state.segment_bits : 16;
            const auto plain = random_bits(static_cast<std::size_t>(unit) * 12);
            if (mode_decrypt(state, cipher, mode_encrypt(state, cipher, plain)) != plain)
                return {false, std::string("round trip failed for ") + mode_name(mode)};
        }

    // CBC: block i garbled, block i+1 flipped in exactly the same position
    {
        const ModeState state{Mode::Cbc, 0x7777, 0};
        const auto plain = random_bits(16 * 6);
        auto ct = mode_encrypt(state, cipher, plain);
        const std::size_t block = 2, bit = 5;
        ct[16 * block + bit] ^= 1u;
        const auto dec = mode_decrypt(state, cipher, ct);
        for (std::size_t i = 0; i < plain.size(); ++i) {
            const std::size_t b = i / 16;
            if (b == block) continue;
            const bool differs = dec[i] != plain[i];
            if (b == block + 1 && differs != (i % 16 == bit)) return {false, "CBC reprint position wrong"};
            if (b != block + 1 && differs) return {false, "CBC damage escaped its window"};
        }
    }
    // CFB: damage confined to the faulty segment (exact position) plus the
    // next ceil(n/r) segments, then resynchronized
    for (const int r : {1, 4, 8, 16}) {
        const ModeState state{Mode::Cfb, 0xC3C3, r};
        const int window = (16 + r - 1) / r;
        const auto plain = random_bits(static_cast<std::size_t>(r) * (6 + static_cast<std::size_t>(window) + 6));
        auto ct = mode_encrypt(state, cipher, plain);
        const std::size_t seg = 3, bit = static_cast<std::size_t>(rng()) % static_cast<std::size_t>(r);
        ct[static_cast<std::size_t>(r) * seg + bit] ^= 1u;
        const auto dec = mode_decrypt(state, cipher, ct);
        for (std::size_t i = 0; i < plain.size(); ++i) {
            const std::size_t s = i / static_cast<std::size_t>(r);
            const bool differs = dec[i] != plain[i];
            if (s < seg && differs) return {false, "CFB damage before the flip"};
            if (s == seg && differs != (i % static_cast<std::size_t>(r) == bit))
                return {false, "CFB faulty segment not bit-exact"};
            if (s > seg + static_cast<std::size_t>(window) && differs) return {false, "CFB failed to resynchronize"};
        }
    }
    // OFB and CTR: single-bit containment
    for (const Mode mode : {Mode::Ofb, Mode::Ctr}) {
        const ModeState state{mode, 0x5A5A, 0};
        const auto plain = random_bits(16 * 6);
        auto ct = mode_encrypt(state, cipher, plain);
        const std::size_t pos = 16 * 2 + 9;
        ct[pos] ^= 1u;
        const auto dec = mode_decrypt(state, cipher, ct);
        for (std::size_t i = 0; i < plain.size(); ++i)
            if ((dec[i] != plain[i]) != (i == pos))
                return {false, std::string("containment violated for ") + mode_name(mode)};
    }
    return {true, "round trips and the per-table error-propagation patterns hold"};
}

// --- criterion 12: I-CRYPT -------------------------------------------------------------------------

Outcome criterion_icrypt() {
    std::mt19937_64 rng(120001);
    for (const auto variant : {KeyInjection::Bias, KeyInjection::Input})
        for (const bool simplified : {false, true}) {
            const auto params = IcryptParams::generate(variant, simplified);
            for (int i = 0; i < 25000; ++i) {
                const Icrypt cipher(rng(), params);
                const std::uint64_t p = rng();
                if (cipher.decrypt_block(cipher.encrypt_block(p)) != p) return {false, "inverse property failed"};
            }
        }

    if (bipolar_byte_sum(0) != -8 || bipolar_byte_sum(255) != 8) return {false, "bipolar endpoints wrong"};
    for (int b = 0; b < 256; ++b)
        if (bipolar_byte_sum(static_cast<std::uint8_t>(b)) != 2 * std::popcount(static_cast<unsigned>(b)) - 8)
            return {false, "bipolar closed form violated"};

    for (const auto variant : {KeyInjection::Bias, KeyInjection::Input}) {
        const auto params = IcryptParams::generate(variant, true);
        for (int i = 0; i < 200000; ++i) {
            const std::uint64_t x = rng() & 0xFFFFFFFFull, k = rng() & 0xFFFFFFFFull;
            if (icrypt_core_xnor(x, k, params) != icrypt_core_direct(x, k, params))
                return {false, "XNOR path diverged from the direct sum"};
        }
    }

    {
        const auto params = IcryptParams::generate();
        const Icrypt cipher(0xA5A5A5A55A5A5A5Aull, params);
        const auto report = quality_harness([&](std::uint64_t x) { return cipher.encrypt_block(x); }, 64, 64,
                                            100000, 120002);
        for (const auto& row : report.sac)
            for (const double p : row)
                if (p < 0.45 || p > 0.55) return {false, "SAC entry outside 0.5 +- 0.05: " + std::to_string(p)};
    }

    // pinned vectors guard bit-exact behaviour across releases
    for (const auto& [variant, simplified, file] :
         {std::tuple{KeyInjection::Bias, false, "icrypt_kat_bias.txt"},
          std::tuple{KeyInjection::Bias, true, "icrypt_kat_bias_simplified.txt"},
          std::tuple{KeyInjection::Input, false, "icrypt_kat_input.txt"},
          std::tuple{KeyInjection::Input, true, "icrypt_kat_input_simplified.txt"}}) {
        std::ifstream in(std::string(CRYPTOLAB_TEST_DATA_DIR) + "/" + file);
        if (!in) return {false, std::string("missing KAT file ") + file};
        const auto params = IcryptParams::generate(variant, simplified);
        std::string line;
        int rows = 0;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::istringstream fields(line);
            std::string key_hex, p_hex, c_hex;
            std::getline(fields, key_hex, ',');
            std::getline(fields, p_hex, ',');
            std::getline(fields, c_hex);
            const Icrypt cipher(parse_hex(key_hex, 64), params);
            if (cipher.encrypt_block(parse_hex(p_hex, 64)) != parse_hex(c_hex, 64))
                return {false, std::string("KAT mismatch in ") + file};
            ++rows;
        }
        if (rows != 8) return {false, std::string("unexpected KAT row count in ") + file};
    }
    return {true, "inverse, bipolar sums, XNOR fast path, SAC within 0.5 +- 0.05, pinned vectors stable"};
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "DDT exactness", criterion_ddt},
        {2, "characteristic probabilities", criterion_characteristics},
        {3, "empirical differential probability", criterion_empirical},
        {4, "classical differential attack", criterion_classical},
        {5, "GA attack success and budget", criterion_ga_attack},
        {6, "GA benchmark", criterion_ga_benchmark},
        {7, "backpropagation correctness", criterion_backprop},
        {8, "NN attack", criterion_nn_attack},
        {9, "interpolation attack", criterion_interpolation},
        {10, "GF/Euclid exactness", criterion_field},
        {11, "modes properties", criterion_modes},
        {12, "I-CRYPT", criterion_icrypt},
    };

    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    int failures = 0;
    for (const auto& criterion : criteria) {
        if (only && criterion.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criterion.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %2d (%s): %s [%.1fs]\n", outcome.passed ? "PASS" : "FAIL", criterion.id,
                    criterion.name, outcome.detail.c_str(), secs);
        std::fflush(stdout);
        failures += outcome.passed ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
