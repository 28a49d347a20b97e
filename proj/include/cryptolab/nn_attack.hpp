#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "cryptolab/bits.hpp"
#include "cryptolab/feistel.hpp"
#include "cryptolab/neural.hpp"
#include "cryptolab/parallel.hpp"

namespace cryptolab {

// Key ranking by approximation error: one network per candidate last-round
// key, trained to map plaintexts to the partially decrypted round-(R-1) half,
// scored on held-out pairs. The true key yields a consistent mapping and so
// the smallest error.
struct NnAttackConfig {
    int rounds = 2;
    int examples_per_round = 12;  // 1.5x the core degree
    int holdout = 5;              // evaluation examples
    int hidden_layers = 1;
    int hidden_size = 12;
    int epochs = 2000;
    double learning_rate = 0.5;
    double lambda = 1.0;
    std::uint64_t seed = 0;
    bool sort_training_set = true;
    int workers = 1;

    int total_examples() const { return examples_per_round * rounds + holdout; }

    void validate() const {
        if (rounds < 2 || rounds > 4) throw std::invalid_argument("rounds must lie in {2, 3, 4}");
        if (holdout < 1) throw std::invalid_argument("no evaluation data: holdout must be >= 1");
        if (hidden_layers != 1 && hidden_layers != 2)
            throw std::invalid_argument("hidden_layers must be 1 or 2");
        if (rounds >= 3 && hidden_layers != 2)
            throw std::invalid_argument("rounds >= 3 require a second hidden layer");
        if (hidden_size < 1 || epochs < 1) throw std::invalid_argument("bad network budget");
    }
};

struct KeyErrorTable {
    std::array<double, 256> holdout_sse{};
    std::array<double, 256> training_sse{};
    int argmin_key = 0;
    double margin = 0.0;  // runner-up error minus the minimum
};

// Known plaintext/ciphertext pairs under one fixed unknown key.
using KnownPair = std::pair<std::uint16_t, std::uint16_t>;

template <typename Cipher>
std::vector<KnownPair> generate_known_pairs(const Cipher& cipher, int count, std::mt19937_64& rng) {
    std::vector<KnownPair> pairs;
    pairs.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const auto p = static_cast<std::uint16_t>(rng());
        pairs.emplace_back(p, static_cast<std::uint16_t>(cipher.encrypt_block(p)));
    }
    return pairs;
}

// Input: the 16 plaintext bits. Target: the key-dependent half of the
// one-round undo under the guess, as 8 bits. The other half needs no key and
// is left out of the mapping.
template <typename Cipher>
std::vector<TrainingExample> build_training_targets(const Cipher& cipher, std::span<const KnownPair> pairs,
                                                    std::uint8_t k_guess) {
    std::vector<TrainingExample> examples;
    examples.reserve(pairs.size());
    for (const auto& [p, c] : pairs) {
        TrainingExample ex;
        ex.input.resize(16);
        for (int b = 0; b < 16; ++b) ex.input[static_cast<std::size_t>(b)] = (p >> (15 - b)) & 1u;
        const std::uint8_t target = cipher.partial_decrypt_last_round(c, k_guess).first;
        ex.target.resize(8);
        for (int b = 0; b < 8; ++b) ex.target[static_cast<std::size_t>(b)] = (target >> (7 - b)) & 1u;
        examples.push_back(std::move(ex));
    }
    return examples;
}

template <typename Cipher>
KeyErrorTable nn_key_ranking_attack(const Cipher& cipher, std::span<const KnownPair> pairs,
                                    const NnAttackConfig& config) {
    config.validate();
    const int m = config.total_examples();
    if (static_cast<int>(pairs.size()) < m)
        throw std::invalid_argument("need M = k*R + c known pairs");

    std::vector<KnownPair> training(pairs.begin(), pairs.begin() + (m - config.holdout));
    const std::vector<KnownPair> evaluation(pairs.begin() + (m - config.holdout), pairs.begin() + m);
    if (config.sort_training_set)
        std::sort(training.begin(), training.end());

    std::vector<int> layers{16};
    for (int l = 0; l < config.hidden_layers; ++l) layers.push_back(config.hidden_size);
    layers.push_back(8);

    KeyErrorTable table;
    parallel_for(256, config.workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t key = begin; key < end; ++key) {
            const auto guess = static_cast<std::uint8_t>(key);
            // seed each per-key job independently so worker count cannot
            // change any result
            std::mt19937_64 rng(mix_seed(config.seed, key));
            auto net = FeedforwardNetwork::random(layers, rng, 0.5, Activation::Sigmoid, config.lambda);
            const auto train_set = build_training_targets(cipher, training, guess);
            const auto eval_set = build_training_targets(cipher, evaluation, guess);
            double train_sse = 0.0;
            for (int epoch = 0; epoch < config.epochs; ++epoch)
                train_sse = net.train_epoch(train_set, config.learning_rate);
            table.training_sse[key] = train_sse;
            table.holdout_sse[key] = net.sse(eval_set);
        }
    });

    table.argmin_key = 0;
    for (int key = 1; key < 256; ++key)
        if (table.holdout_sse[static_cast<std::size_t>(key)] <
            table.holdout_sse[static_cast<std::size_t>(table.argmin_key)])
            table.argmin_key = key;
    double runner_up = std::numeric_limits<double>::infinity();
    for (int key = 0; key < 256; ++key)
        if (key != table.argmin_key)
            runner_up = std::min(runner_up, table.holdout_sse[static_cast<std::size_t>(key)]);
    table.margin = runner_up - table.holdout_sse[static_cast<std::size_t>(table.argmin_key)];
    return table;
}

struct ErrorCurveRow {
    int key = 0;
    double sse = 0.0;
};

inline std::vector<ErrorCurveRow> error_curve(const KeyErrorTable& table) {
    std::vector<ErrorCurveRow> rows;
    rows.reserve(256);
    for (int key = 0; key < 256; ++key)
        rows.push_back({key, table.holdout_sse[static_cast<std::size_t>(key)]});
    return rows;
}

}  // namespace cryptolab
