#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "cryptolab/bits.hpp"

namespace cryptolab {

// Monte-Carlo estimates of the core-function quality criteria: the fraction of
// output bits flipped by a single input-bit flip, the per-(input, output) flip
// probabilities, the strongest pairwise output-flip correlation, and the
// smallest observed flip count (the empirical guaranteed-avalanche order).
struct AvalancheReport {
    int input_bits = 0;
    int output_bits = 0;
    int samples = 0;
    double avalanche_fraction = 0.0;
    std::vector<std::vector<double>> sac;  // [input bit][output bit], MSB-first
    double bic_max_correlation = 0.0;
    int gamma = 0;
};

inline AvalancheReport quality_harness(const std::function<std::uint64_t(std::uint64_t)>& fn, int input_bits,
                                       int output_bits, int samples, std::uint64_t seed) {
    if (samples < 10000) throw std::invalid_argument("quality_harness needs at least 10^4 samples");
    if (input_bits < 1 || input_bits > 64 || output_bits < 1 || output_bits > 64)
        throw std::invalid_argument("bit widths must lie in [1, 64]");

    AvalancheReport report;
    report.input_bits = input_bits;
    report.output_bits = output_bits;
    report.samples = samples;
    report.sac.assign(static_cast<std::size_t>(input_bits), std::vector<double>(static_cast<std::size_t>(output_bits), 0.0));

    std::mt19937_64 rng(seed);
    const std::uint64_t in_mask = bit_mask(input_bits);

    std::vector<std::vector<std::int64_t>> flip_count(static_cast<std::size_t>(input_bits),
                                                      std::vector<std::int64_t>(static_cast<std::size_t>(output_bits), 0));
    // joint flip counts per input bit, for the pairwise independence check
    std::vector<std::vector<std::int64_t>> joint(static_cast<std::size_t>(input_bits),
                                                 std::vector<std::int64_t>(static_cast<std::size_t>(output_bits) *
                                                                               static_cast<std::size_t>(output_bits),
                                                                           0));
    std::int64_t total_flips = 0;
    int min_flips = output_bits + 1;

    for (int s = 0; s < samples; ++s) {
        const std::uint64_t x = rng() & in_mask;
        const std::uint64_t y = fn(x);
        for (int i = 0; i < input_bits; ++i) {
            const std::uint64_t flips = y ^ fn(x ^ (std::uint64_t{1} << (input_bits - 1 - i)));
            const int weight = std::popcount(flips);
            total_flips += weight;
            min_flips = weight < min_flips ? weight : min_flips;
            auto& row = flip_count[static_cast<std::size_t>(i)];
            auto& jrow = joint[static_cast<std::size_t>(i)];
            std::uint64_t rest = flips;
            while (rest) {
                const int jz = std::countr_zero(rest);
                rest &= rest - 1;
                const int j = output_bits - 1 - jz;
                ++row[static_cast<std::size_t>(j)];
                std::uint64_t rest2 = rest;
                while (rest2) {
                    const int kz = std::countr_zero(rest2);
                    rest2 &= rest2 - 1;
                    const int k = output_bits - 1 - kz;
                    ++jrow[static_cast<std::size_t>(k) * static_cast<std::size_t>(output_bits) +
                           static_cast<std::size_t>(j)];
                }
            }
        }
    }

    report.avalanche_fraction = static_cast<double>(total_flips) /
                                (static_cast<double>(samples) * input_bits * output_bits);
    report.gamma = min_flips > output_bits ? 0 : min_flips;

    double max_corr = 0.0;
    const auto n = static_cast<double>(samples);
    for (int i = 0; i < input_bits; ++i) {
        for (int j = 0; j < output_bits; ++j) {
            const double pj = static_cast<double>(flip_count[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) / n;
            report.sac[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = pj;
        }
        for (int j = 0; j < output_bits; ++j)
            for (int k = j + 1; k < output_bits; ++k) {
                const double pj = report.sac[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                const double pk = report.sac[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
                const double pjk = static_cast<double>(joint[static_cast<std::size_t>(i)]
                                                            [static_cast<std::size_t>(j) * static_cast<std::size_t>(output_bits) +
                                                             static_cast<std::size_t>(k)]) / n;
                const double varj = pj * (1.0 - pj);
                const double vark = pk * (1.0 - pk);
                if (varj <= 0.0 || vark <= 0.0) continue;  // constant indicator: correlation undefined
                const double corr = (pjk - pj * pk) / std::sqrt(varj * vark);
                max_corr = std::max(max_corr, std::abs(corr));
            }
    }
    report.bic_max_correlation = max_corr;
    return report;
}

}  // namespace cryptolab
