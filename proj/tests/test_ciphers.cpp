#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>

#include "cryptolab/feistel.hpp"
#include "cryptolab/spn.hpp"

using namespace cryptolab;

namespace {

BasicSpn::KeySchedule random_spn_keys(std::mt19937_64& rng) {
    BasicSpn::KeySchedule k;
    for (auto& v : k) v = static_cast<std::uint16_t>(rng());
    return k;
}

}  // namespace

TEST_CASE("SPN substitution tables") {
    CHECK(spn_sbox(1, 1)[0x0] == 0xE);
    CHECK(spn_sbox(1, 1)[0xF] == 0x7);
    CHECK(spn_sbox(4, 4)[0x0] == 0x3);

    // every box is a bijection on [0, 15]
    for (int r = 1; r <= 4; ++r)
        for (int b = 1; b <= 4; ++b) {
            std::array<bool, 16> seen{};
            for (int v = 0; v < 16; ++v) seen[spn_sbox(r, b)[static_cast<std::size_t>(v)]] = true;
            for (bool s : seen) CHECK(s);
        }

    // inverse substitution undoes the forward layer
    CHECK(spn_inverse_substitute(spn_substitute(0x1234, 2), 2) == 0x1234);
    CHECK((spn_inverse_substitute(0xE000, 1) >> 12) == 0x0);
}

TEST_CASE("SPN permutation") {
    // bit 2 moves to position 5 and vice versa
    CHECK(spn_permute(static_cast<std::uint16_t>(with_bit(0, 16, 2, 1))) == with_bit(0, 16, 5, 1));
    CHECK(spn_permute(static_cast<std::uint16_t>(with_bit(0, 16, 5, 1))) == with_bit(0, 16, 2, 1));

    SECTION("involution on every word") {
        for (std::uint32_t x = 0; x < 65536; ++x)
            REQUIRE(spn_permute(spn_permute(static_cast<std::uint16_t>(x))) == x);
    }
}

TEST_CASE("SPN encrypt/decrypt round trip, exhaustive blocks") {
    std::mt19937_64 rng(401);
    for (int trial = 0; trial < 10; ++trial) {
        const BasicSpn cipher(random_spn_keys(rng));
        for (std::uint32_t p = 0; p < 65536; ++p)
            REQUIRE(cipher.decrypt(cipher.encrypt(static_cast<std::uint16_t>(p))) == p);
    }
    const BasicSpn zero({});
    CHECK(zero.decrypt(zero.encrypt(0x0000)) == 0x0000);
}

TEST_CASE("SPN partial decryption matches the forward trace") {
    std::mt19937_64 rng(402);
    const auto keys = random_spn_keys(rng);
    const BasicSpn cipher(keys);
    for (int i = 0; i < 2000; ++i) {
        const auto p = static_cast<std::uint16_t>(rng());
        const auto u = cipher.encrypt_trace(p);
        const auto c = cipher.encrypt(p);
        REQUIRE(BasicSpn::partial_decrypt_last_round(c, keys[4]) == u[3]);
    }
}

TEST_CASE("Feistel32 one-round swap-and-reapply restores the input") {
    const SpnRoundFunction f{};
    std::mt19937_64 rng(403);
    for (int i = 0; i < 1000; ++i) {
        const auto xl = static_cast<std::uint16_t>(rng());
        const auto xr = static_cast<std::uint16_t>(rng());
        const auto k = static_cast<std::uint16_t>(rng());
        const std::uint16_t yl = xr;
        const auto yr = static_cast<std::uint16_t>(f(xr, k, 1) ^ xl);
        // swap the outputs and apply the same round again
        const std::uint16_t zl = yl;
        const auto zr = static_cast<std::uint16_t>(f(yl, k, 1) ^ yr);
        CHECK(zl == xr);
        CHECK(zr == xl);
    }
}

TEST_CASE("Feistel32 round trip") {
    std::mt19937_64 rng(404);
    const auto cipher = make_feistel32({static_cast<std::uint16_t>(rng()), static_cast<std::uint16_t>(rng()),
                                        static_cast<std::uint16_t>(rng()), static_cast<std::uint16_t>(rng())});
    for (int i = 0; i < 100000; ++i) {
        const std::uint64_t p = rng() & 0xFFFFFFFFull;
        REQUIRE(cipher.decrypt_block(cipher.encrypt_block(p)) == p);
    }

    // each round copies its right input into its left output
    const auto zero = make_feistel32({0, 0, 0, 0});
    const auto trace = zero.encrypt_trace(0);
    for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i].first == trace[i - 1].second);

    CHECK_THROWS_AS(make_feistel32({1, 2, 3}), std::invalid_argument);
}

TEST_CASE("HypCipher core and round trip") {
    const RijndaelRoundFunction f{};
    CHECK(f(0x00, 0x00, 1) == 0x63);

    std::mt19937_64 rng(405);
    for (int i = 0; i < 1000; ++i) {
        const auto x = static_cast<std::uint8_t>(rng());
        const auto k = static_cast<std::uint8_t>(rng());
        CHECK(f(x, k, 1) == f(static_cast<std::uint8_t>(x ^ k), 0, 1));
    }

    for (int trial = 0; trial < 5; ++trial) {
        const auto cipher = make_hypcipher({static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng())});
        for (std::uint32_t p = 0; p < 65536; ++p)
            REQUIRE(cipher.decrypt_block(cipher.encrypt_block(p)) == p);
    }

    CHECK_THROWS_AS(make_hypcipher({1}), std::invalid_argument);
    CHECK_THROWS_AS(make_hypcipher({1, 2, 3, 4, 5}), std::invalid_argument);
}

TEST_CASE("CubeCipher core") {
    const CubeRoundFunction f{};
    CHECK(f(0, 0, 1) == 0);
    CHECK(f(1, 0, 1) == 1);
    CHECK(f(0x02, 0x00, 1) == gf_mul(gf_mul(2, 2), 2));
    CHECK(f(0x02, 0x00, 1) == 0x08);

    std::mt19937_64 rng(406);
    const auto cipher = make_cubecipher({static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng()),
                                         static_cast<std::uint8_t>(rng())});
    for (std::uint32_t p = 0; p < 65536; ++p)
        REQUIRE(cipher.decrypt_block(cipher.encrypt_block(p)) == p);

    CHECK_THROWS_AS(make_cubecipher({1, 2, 3, 4}), std::invalid_argument);
}

TEST_CASE("Feistel partial decryption matches the forward trace") {
    std::mt19937_64 rng(407);
    const std::vector<std::uint8_t> keys{static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng()),
                                         static_cast<std::uint8_t>(rng())};
    const auto cipher = make_hypcipher(keys);
    for (int i = 0; i < 2000; ++i) {
        const auto p = static_cast<std::uint16_t>(rng());
        const auto trace = cipher.encrypt_trace(p);
        const auto c = cipher.encrypt_block(p);
        const auto prev = trace[trace.size() - 2];
        const auto got = cipher.partial_decrypt_last_round(c, keys.back());
        REQUIRE(got.first == prev.first);
        REQUIRE(got.second == prev.second);
        // the second half never depends on the guess
        const auto wrong = cipher.partial_decrypt_last_round(c, static_cast<std::uint8_t>(keys.back() ^ 0x5A));
        REQUIRE(wrong.second == got.second);
    }
}

TEST_CASE("single key bit flips change some ciphertext") {
    std::mt19937_64 rng(408);
    const auto keys = random_spn_keys(rng);
    const BasicSpn cipher(keys);
    for (int word = 0; word < 5; ++word)
        for (int bit = 1; bit <= 16; ++bit) {
            auto flipped = keys;
            flipped[static_cast<std::size_t>(word)] =
                static_cast<std::uint16_t>(with_bit(flipped[static_cast<std::size_t>(word)], 16, bit,
                                                    1 - get_bit(flipped[static_cast<std::size_t>(word)], 16, bit)));
            const BasicSpn other(flipped);
            bool differs = false;
            for (int i = 0; i < 64 && !differs; ++i) {
                const auto p = static_cast<std::uint16_t>(rng());
                differs = cipher.encrypt(p) != other.encrypt(p);
            }
            CHECK(differs);
        }
}
