#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "cryptolab/bits.hpp"

namespace cryptolab {

template <typename C>
concept BlockCipher = requires(const C& c, std::uint64_t b) {
    { c.block_bits() } -> std::convertible_to<int>;
    { c.encrypt_block(b) } -> std::convertible_to<std::uint64_t>;
    { c.decrypt_block(b) } -> std::convertible_to<std::uint64_t>;
};

enum class Mode { Ecb, Cbc, Cfb, Ofb, Ctr };

inline const char* mode_name(Mode m) {
    switch (m) {
        case Mode::Ecb: return "ecb";
        case Mode::Cbc: return "cbc";
        case Mode::Cfb: return "cfb";
        case Mode::Ofb: return "ofb";
        case Mode::Ctr: return "ctr";
    }
    return "?";
}

inline std::optional<Mode> parse_mode(const std::string& s) {
    if (s == "ecb") return Mode::Ecb;
    if (s == "cbc") return Mode::Cbc;
    if (s == "cfb") return Mode::Cfb;
    if (s == "ofb") return Mode::Ofb;
    if (s == "ctr") return Mode::Ctr;
    return std::nullopt;
}

// Per-stream mode state. segment_bits applies to CFB/OFB only; 0 selects the
// full block width. left_r / right_{n-r} follow the MSB-first bit numbering.
struct ModeState {
    Mode mode = Mode::Ecb;
    std::optional<std::uint64_t> iv;
    int segment_bits = 0;
};

namespace detail {

template <BlockCipher C>
int checked_segment_bits(const ModeState& state, const C& cipher) {
    const int n = cipher.block_bits();
    if (state.mode == Mode::Cfb || state.mode == Mode::Ofb) {
        const int r = state.segment_bits == 0 ? n : state.segment_bits;
        if (r < 1 || r > n) throw std::invalid_argument("segment bits must be in [1, block bits]");
        return r;
    }
    if (state.segment_bits != 0 && state.segment_bits != n)
        throw std::invalid_argument("segment bits apply to CFB/OFB only");
    return n;
}

template <BlockCipher C>
std::uint64_t checked_iv(const ModeState& state, const C& cipher) {
    if (state.mode == Mode::Ecb) {
        if (state.iv) throw std::invalid_argument("ECB takes no IV");
        return 0;
    }
    if (!state.iv) throw std::invalid_argument("mode requires an IV");
    if (*state.iv > bit_mask(cipher.block_bits())) throw std::invalid_argument("IV exceeds block width");
    return *state.iv;
}

inline std::uint64_t left_bits(std::uint64_t block, int n, int r) { return block >> (n - r); }

template <BlockCipher C>
BitStream run_mode(const ModeState& state, const C& cipher, std::span<const std::uint8_t> input, bool encrypting) {
    const int n = cipher.block_bits();
    const int r = checked_segment_bits(state, cipher);
    std::uint64_t reg = checked_iv(state, cipher);

    const int unit = (state.mode == Mode::Cfb || state.mode == Mode::Ofb) ? r : n;
    if (input.size() % static_cast<std::size_t>(unit) != 0)
        throw std::invalid_argument(std::string("input length must be a multiple of ") + std::to_string(unit) + " bits");

    BitStream out;
    out.reserve(input.size());
    for (std::size_t off = 0; off < input.size(); off += static_cast<std::size_t>(unit)) {
        const std::uint64_t in = pack_bits(input.subspan(off, static_cast<std::size_t>(unit)));
        switch (state.mode) {
            case Mode::Ecb:
                unpack_bits(encrypting ? cipher.encrypt_block(in) : cipher.decrypt_block(in), n, out);
                break;
            case Mode::Cbc:
                if (encrypting) {
                    reg = cipher.encrypt_block(in ^ reg);
                    unpack_bits(reg, n, out);
                } else {
                    unpack_bits(cipher.decrypt_block(in) ^ reg, n, out);
                    reg = in;
                }
                break;
            case Mode::Cfb: {
                const std::uint64_t ks = left_bits(cipher.encrypt_block(reg), n, r);
                const std::uint64_t seg = in ^ ks;
                const std::uint64_t c = encrypting ? seg : in;  // ciphertext feeds the register
                reg = ((reg << r) | c) & bit_mask(n);
                unpack_bits(seg, r, out);
                break;
            }
            case Mode::Ofb: {
                reg = cipher.encrypt_block(reg);
                unpack_bits(in ^ left_bits(reg, n, r), r, out);
                break;
            }
            case Mode::Ctr: {
                unpack_bits(in ^ cipher.encrypt_block(reg), n, out);
                reg = (reg + 1) & bit_mask(n);
                break;
            }
        }
    }
    return out;
}

}  // namespace detail

template <BlockCipher C>
BitStream mode_encrypt(const ModeState& state, const C& cipher, std::span<const std::uint8_t> plaintext_bits) {
    return detail::run_mode(state, cipher, plaintext_bits, true);
}

// CFB/OFB/CTR invert using the cipher's encrypt direction only.
template <BlockCipher C>
BitStream mode_decrypt(const ModeState& state, const C& cipher, std::span<const std::uint8_t> ciphertext_bits) {
    return detail::run_mode(state, cipher, ciphertext_bits, false);
}

}  // namespace cryptolab
