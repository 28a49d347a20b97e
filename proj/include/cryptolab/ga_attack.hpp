#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "cryptolab/differential.hpp"
#include "cryptolab/genetic.hpp"
#include "cryptolab/rational.hpp"

namespace cryptolab {

// Right-pair ratio for one candidate subkey: F = d / M over the chosen pairs.
struct FitnessRecord {
    int right_pairs = 0;
    int pair_total = 0;
    Rational fitness{0, 1};
    double percent_of_pd = 0.0;
};

template <typename Target>
FitnessRecord differential_fitness(const Target& target, const Rational& p_d, std::uint16_t candidate) {
    FitnessRecord rec;
    rec.right_pairs = target.count_for_key(candidate);
    rec.pair_total = target.pair_total();
    if (rec.pair_total == 0) throw std::invalid_argument("differential_fitness: no chosen pairs");
    rec.fitness = Rational{rec.right_pairs, rec.pair_total};
    rec.percent_of_pd = rec.fitness.to_double() / p_d.to_double() * 100.0;
    return rec;
}

struct GaAttackConfig {
    DifferentialCharacteristic characteristic;
    // Elitism is on for the attack: the published per-generation best columns
    // are monotone in every run, unlike the oscillating benchmark.
    GaConfig ga{
        .population_size = 1024,
        .chromosome_bits = 16,
        .max_generations = 16,
        .crossover_probability = 0.25,
        .mutation_probability = 0.01,
        .elitism = true,
    };
    double alpha = 0.8;            // stop threshold as a fraction of P_D
    int plateau_generations = 3;   // identical best fitness for this many generations
    std::int64_t budget_cap = 1 << 15;  // at most half of the 2^16 subkey space

    void validate() const {
        ga.validate();
        if (alpha <= 0.0 || alpha >= 1.0) throw std::invalid_argument("alpha must lie in (0, 1)");
        if (plateau_generations < 1) throw std::invalid_argument("plateau length must be >= 1");
    }
};

// True once the best fitness has reached alpha * P_D and stayed at one value
// for `plateau` consecutive generations.
inline bool ga_stop_predicate(std::span<const GenerationRecord> trace, double alpha, const Rational& p_d,
                              int plateau) {
    if (static_cast<int>(trace.size()) < plateau) return false;
    const double latest = trace.back().best_fitness;
    if (latest < alpha * p_d.to_double()) return false;
    for (int i = 1; i < plateau; ++i)
        if (trace[trace.size() - 1 - static_cast<std::size_t>(i)].best_fitness != latest) return false;
    return true;
}

struct GaAttackRow {
    int generation = 0;
    std::uint16_t best_solution = 0;
    Rational fitness{0, 1};
    double percent_of_pd = 0.0;
};

struct GaAttackResult {
    std::uint16_t recovered_subkey = 0;
    std::vector<GaAttackRow> trace;
    std::int64_t keys_evaluated = 0;
};

// Evolves 16-bit candidate subkeys against the right-pair-count fitness. The
// generation budget is clamped so the number of evaluated keys stays under the
// configured cap.
template <typename Target>
GaAttackResult ga_differential_attack(const GaAttackConfig& config, const Target& target) {
    config.validate();
    const Rational p_d = config.characteristic.probability;

    GaConfig ga = config.ga;
    const auto cap_generations = static_cast<int>(config.budget_cap / ga.population_size);
    if (cap_generations < 1) throw std::invalid_argument("budget cap below one generation");
    if (ga.max_generations > cap_generations) ga.max_generations = cap_generations;

    const auto fitness = [&](const Chromosome& c) {
        return static_cast<double>(target.count_for_key(static_cast<std::uint16_t>(c.as_word()))) /
               static_cast<double>(target.pair_total());
    };
    const StopPredicate stop = [&](std::span<const GenerationRecord> trace) {
        return ga_stop_predicate(trace, config.alpha, p_d, config.plateau_generations);
    };

    const GaResult run = run_ga(ga, fitness, stop);

    GaAttackResult result;
    result.recovered_subkey = static_cast<std::uint16_t>(run.best_ever.as_word());
    result.keys_evaluated = run.evaluations;
    for (const auto& rec : run.trace) {
        const auto key = static_cast<std::uint16_t>(rec.best.as_word());
        GaAttackRow row;
        row.generation = rec.generation;
        row.best_solution = key;
        row.fitness = Rational{target.count_for_key(key), target.pair_total()};
        row.percent_of_pd = row.fitness.to_double() / p_d.to_double() * 100.0;
        result.trace.push_back(row);
    }
    return result;
}

// --- pair-count sweep ------------------------------------------------------------

struct SweepRow {
    int rule_constant = 0;
    int pair_count = 0;
    std::uint16_t recovered = 0;
    bool converged = false;
    std::vector<GaAttackRow> trace;
};

// Reruns the attack with N_D = c / P_D pairs for each requested c, reporting
// whether the best-ever key matched the true subkey.
template <typename Cipher, typename MakeTarget>
std::vector<SweepRow> pair_count_sweep(const Cipher& cipher, std::uint16_t true_subkey,
                                       const GaAttackConfig& config, std::span<const int> c_values,
                                       std::uint64_t seed, MakeTarget&& make_target) {
    std::vector<SweepRow> rows;
    const Rational p_d = config.characteristic.probability;
    for (std::size_t i = 0; i < c_values.size(); ++i) {
        const int c = c_values[i];
        SweepRow row;
        row.rule_constant = c;
        row.pair_count = static_cast<int>((static_cast<std::int64_t>(c) * p_d.den + p_d.num - 1) / p_d.num);
        std::mt19937_64 pair_rng(mix_seed(seed, 0xA11 + i));
        const auto pairs = generate_chosen_pairs(cipher, config.characteristic.input_difference, row.pair_count,
                                                 pair_rng);
        const auto target = make_target(config.characteristic, pairs);
        GaAttackConfig run_config = config;
        run_config.ga.seed = mix_seed(seed, 0xBEE + i);
        const GaAttackResult res = ga_differential_attack(run_config, target);
        row.recovered = res.recovered_subkey;
        row.converged = res.recovered_subkey == true_subkey;
        row.trace = res.trace;
        rows.push_back(std::move(row));
    }
    return rows;
}

// --- peel-one-round helpers (experimental) ----------------------------------------
//
// Once the last-round subkey is recovered the attack can continue upward: fix
// the key, strip the round, rerun against a characteristic one round shorter.
// Exercised on the bundled ciphers only.

// Transforms Feistel ciphertexts into the round-(R-1) states under a fixed
// last-round key, yielding pairs for an attack on a (rounds-1)-round cipher.
inline std::vector<ChosenPair> feistel_peel_last_round(const Feistel32& cipher, std::uint16_t recovered_key,
                                                       const std::vector<ChosenPair>& pairs) {
    std::vector<ChosenPair> reduced;
    reduced.reserve(pairs.size());
    for (const auto& pr : pairs) {
        const auto s1 = cipher.partial_decrypt_last_round(pr.c1, recovered_key);
        const auto s2 = cipher.partial_decrypt_last_round(pr.c2, recovered_key);
        reduced.push_back({pr.p1, cipher.join(s1.first, s1.second), pr.p2, cipher.join(s2.first, s2.second)});
    }
    return reduced;
}

// SPN counterpart: undoing the whitening key and the round-4 substitution
// leaves round-4 inputs as the reduced ciphertexts. The next subkey is then
// attacked with SpnDiffTarget(chr, pairs, attacked_round = 3, pre_permute =
// true), since the reduced cipher ends permutation-then-key-mix.
inline std::vector<ChosenPair> spn_peel_last_round(std::uint16_t recovered_k5, const std::vector<ChosenPair>& pairs) {
    std::vector<ChosenPair> reduced;
    reduced.reserve(pairs.size());
    for (const auto& pr : pairs) {
        reduced.push_back({pr.p1,
                           BasicSpn::partial_decrypt_last_round(static_cast<std::uint16_t>(pr.c1), recovered_k5),
                           pr.p2,
                           BasicSpn::partial_decrypt_last_round(static_cast<std::uint16_t>(pr.c2), recovered_k5)});
    }
    return reduced;
}

}  // namespace cryptolab
