#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "cryptolab/bits.hpp"

namespace cryptolab {

// Fixed-width binary chromosome. Bit 0 is the leftmost (most significant)
// position of the coding.
struct Chromosome {
    std::vector<std::uint8_t> bits;
    double fitness = 0.0;

    explicit Chromosome(int width = 0) : bits(static_cast<std::size_t>(width), 0) {}

    int width() const { return static_cast<int>(bits.size()); }

    // value of bits [from, to] (1-based, inclusive) as an unsigned integer
    std::uint64_t decode_range(int from, int to) const {
        std::uint64_t v = 0;
        for (int i = from; i <= to; ++i) v = (v << 1) | bits[static_cast<std::size_t>(i - 1)];
        return v;
    }

    std::uint64_t as_word() const { return decode_range(1, width()); }

    static Chromosome from_word(std::uint64_t word, int width) {
        Chromosome c(width);
        for (int i = 0; i < width; ++i)
            c.bits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((word >> (width - 1 - i)) & 1u);
        return c;
    }

    static Chromosome random(int width, std::mt19937_64& rng) {
        Chromosome c(width);
        for (auto& b : c.bits) b = static_cast<std::uint8_t>(rng() & 1u);
        return c;
    }

    bool operator==(const Chromosome& o) const { return bits == o.bits; }
};

struct GaConfig {
    int population_size = 50;
    int chromosome_bits = 16;
    int max_generations = 100;
    double crossover_probability = 0.25;
    double mutation_probability = 0.01;
    bool elitism = false;
    std::uint64_t seed = 0;

    void validate() const {
        if (population_size < 2) throw std::invalid_argument("population size must be >= 2");
        if (chromosome_bits < 1) throw std::invalid_argument("chromosome width must be >= 1");
        if (crossover_probability < 0 || crossover_probability > 1 || mutation_probability < 0 ||
            mutation_probability > 1)
            throw std::invalid_argument("probabilities must lie in [0, 1]");
    }
};

// Fitness-proportional parent sampling. Fitness values must be non-negative;
// an all-zero wheel falls back to a uniform draw.
inline std::size_t roulette_select(std::span<const double> fitness, std::mt19937_64& rng) {
    if (fitness.empty()) throw std::invalid_argument("roulette_select: empty population");
    double total = 0.0;
    for (double f : fitness) {
        if (f < 0) throw std::invalid_argument("roulette_select: negative fitness");
        total += f;
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (total <= 0.0) return static_cast<std::size_t>(unit(rng) * static_cast<double>(fitness.size())) % fitness.size();
    const double ticket = unit(rng) * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < fitness.size(); ++i) {
        acc += fitness[i];
        if (ticket < acc) return i;
    }
    return fitness.size() - 1;
}

// Swaps the prefixes of the two parents ahead of the crossover point:
// offspring 1 carries b's head and a's tail, offspring 2 the reverse.
inline std::pair<Chromosome, Chromosome> one_point_crossover(const Chromosome& a, const Chromosome& b, int point) {
    if (a.width() != b.width()) throw std::invalid_argument("crossover: width mismatch");
    if (point < 1 || point >= a.width()) throw std::invalid_argument("crossover point out of range");
    Chromosome o1 = a, o2 = b;
    for (int i = 0; i < point; ++i) {
        o1.bits[static_cast<std::size_t>(i)] = b.bits[static_cast<std::size_t>(i)];
        o2.bits[static_cast<std::size_t>(i)] = a.bits[static_cast<std::size_t>(i)];
    }
    return {o1, o2};
}

inline Chromosome mutate(const Chromosome& c, double p_m, std::mt19937_64& rng) {
    Chromosome out = c;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto& b : out.bits)
        if (unit(rng) < p_m) b ^= 1u;
    return out;
}

struct GenerationRecord {
    int generation = 0;
    Chromosome best;
    double best_fitness = 0.0;
};

struct GaResult {
    Chromosome best_ever;
    double best_ever_fitness = 0.0;
    std::vector<GenerationRecord> trace;
    std::int64_t evaluations = 0;
};

using StopPredicate = std::function<bool(std::span<const GenerationRecord>)>;

// Generational cycle: evaluate, select by roulette, pair consecutive parents,
// cross with probability p_c, mutate, replace. Without elitism a generation's
// best may be lost, so the reported best is the best ever evaluated.
template <typename FitnessFn>
GaResult run_ga(const GaConfig& config, FitnessFn&& fitness_fn, const StopPredicate& stop = {}) {
    config.validate();
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<Chromosome> population;
    population.reserve(static_cast<std::size_t>(config.population_size));
    for (int i = 0; i < config.population_size; ++i)
        population.push_back(Chromosome::random(config.chromosome_bits, rng));

    GaResult result;
    result.best_ever_fitness = -1.0;

    std::vector<double> wheel(static_cast<std::size_t>(config.population_size));
    for (int gen = 0; gen < config.max_generations; ++gen) {
        std::size_t best_index = 0;
        for (std::size_t i = 0; i < population.size(); ++i) {
            population[i].fitness = fitness_fn(population[i]);
            if (population[i].fitness < 0) throw std::invalid_argument("fitness must be non-negative");
            wheel[i] = population[i].fitness;
            ++result.evaluations;
            if (population[i].fitness > population[best_index].fitness) best_index = i;
        }
        result.trace.push_back({gen, population[best_index], population[best_index].fitness});
        if (population[best_index].fitness > result.best_ever_fitness) {
            result.best_ever_fitness = population[best_index].fitness;
            result.best_ever = population[best_index];
        }
        if (stop && stop(result.trace)) break;
        if (gen + 1 == config.max_generations) break;

        const Chromosome elite = population[best_index];
        std::vector<Chromosome> next;
        next.reserve(population.size());
        while (next.size() < population.size()) {
            const Chromosome& p1 = population[roulette_select(wheel, rng)];
            if (next.size() + 1 == population.size()) {
                next.push_back(mutate(p1, config.mutation_probability, rng));
                break;
            }
            const Chromosome& p2 = population[roulette_select(wheel, rng)];
            Chromosome o1 = p1, o2 = p2;
            if (unit(rng) < config.crossover_probability) {
                std::uniform_int_distribution<int> point(1, config.chromosome_bits - 1);
                std::tie(o1, o2) = one_point_crossover(p1, p2, point(rng));
            }
            next.push_back(mutate(o1, config.mutation_probability, rng));
            next.push_back(mutate(o2, config.mutation_probability, rng));
        }
        if (config.elitism) next.front() = elite;
        population = std::move(next);
    }
    return result;
}

// --- function-maximization benchmark -------------------------------------------

// Two-variable test function with many local maxima; 18 + 15 bit coding.
inline constexpr int kBenchmarkChromosomeBits = 33;

inline double benchmark_function(double x1, double x2) {
    return 21.5 + x1 * std::sin(4.0 * std::numbers::pi * x1) + x2 * std::sin(20.0 * std::numbers::pi * x2);
}

inline std::pair<double, double> decode_benchmark_chromosome(const Chromosome& c) {
    if (c.width() != kBenchmarkChromosomeBits) throw std::invalid_argument("benchmark chromosome is 33 bits");
    const double x1 = -3.0 + static_cast<double>(c.decode_range(1, 18)) * (12.1 - (-3.0)) / ((1 << 18) - 1);
    const double x2 = 4.1 + static_cast<double>(c.decode_range(19, 33)) * (5.8 - 4.1) / ((1 << 15) - 1);
    return {x1, x2};
}

inline double benchmark_fitness(const Chromosome& c) {
    const auto [x1, x2] = decode_benchmark_chromosome(c);
    return benchmark_function(x1, x2);  // bounded below by 21.5 - 12.1 - 5.8 > 0
}

}  // namespace cryptolab
