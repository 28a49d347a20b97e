#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cryptolab {

// Bit positions throughout the library are numbered 1..width with 1 being the
// most significant (leftmost) bit of a word.

inline constexpr std::uint64_t bit_mask(int width) {
    return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

inline constexpr int get_bit(std::uint64_t word, int width, int pos) {
    return static_cast<int>((word >> (width - pos)) & 1u);
}

inline constexpr std::uint64_t with_bit(std::uint64_t word, int width, int pos, int value) {
    const std::uint64_t m = std::uint64_t{1} << (width - pos);
    return value ? (word | m) : (word & ~m);
}

// Nibble index 0..3 of a 16-bit word, nibble 0 holding bits 1..4 (MSB side).
inline constexpr std::uint8_t get_nibble(std::uint16_t word, int index) {
    return static_cast<std::uint8_t>((word >> (12 - 4 * index)) & 0xFu);
}

inline constexpr std::uint16_t with_nibble(std::uint16_t word, int index, std::uint8_t value) {
    const int shift = 12 - 4 * index;
    return static_cast<std::uint16_t>((word & ~(0xFu << shift)) | (std::uint32_t{value} << shift));
}

inline constexpr std::uint8_t rotl8(std::uint8_t v, int k) {
    k &= 7;
    return static_cast<std::uint8_t>((v << k) | (v >> (8 - k)));
}

// splitmix64; used to derive independent sub-seeds from one master seed.
inline constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// --- bit streams -----------------------------------------------------------
//
// A bit stream is a vector of 0/1 bytes in transmission order (first element
// is the first, most significant, bit on the wire).

using BitStream = std::vector<std::uint8_t>;

inline std::uint64_t pack_bits(std::span<const std::uint8_t> bits) {
    if (bits.size() > 64) throw std::invalid_argument("pack_bits: more than 64 bits");
    std::uint64_t w = 0;
    for (std::uint8_t b : bits) w = (w << 1) | (b & 1u);
    return w;
}

inline void unpack_bits(std::uint64_t word, int width, BitStream& out) {
    for (int i = width - 1; i >= 0; --i) out.push_back(static_cast<std::uint8_t>((word >> i) & 1u));
}

inline BitStream bytes_to_bits(std::span<const std::uint8_t> bytes) {
    BitStream bits;
    bits.reserve(bytes.size() * 8);
    for (std::uint8_t b : bytes) unpack_bits(b, 8, bits);
    return bits;
}

inline std::vector<std::uint8_t> bits_to_bytes(std::span<const std::uint8_t> bits) {
    if (bits.size() % 8 != 0) throw std::invalid_argument("bits_to_bytes: length not a byte multiple");
    std::vector<std::uint8_t> bytes;
    bytes.reserve(bits.size() / 8);
    for (std::size_t i = 0; i < bits.size(); i += 8)
        bytes.push_back(static_cast<std::uint8_t>(pack_bits(bits.subspan(i, 8))));
    return bytes;
}

// --- hex -------------------------------------------------------------------

inline std::string to_hex(std::uint64_t value, int width_bits) {
    static const char* digits = "0123456789ABCDEF";
    const int n = (width_bits + 3) / 4;
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = n - 1; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = digits[value & 0xF];
        value >>= 4;
    }
    return s;
}

inline std::uint64_t parse_hex(const std::string& text, int width_bits) {
    if (text.empty() || text.size() > 16) throw std::invalid_argument("bad hex value: '" + text + "'");
    std::uint64_t v = 0;
    for (char c : text) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else throw std::invalid_argument("bad hex value: '" + text + "'");
        v = (v << 4) | static_cast<std::uint64_t>(d);
    }
    if (width_bits < 64 && v > bit_mask(width_bits))
        throw std::invalid_argument("hex value '" + text + "' exceeds " + std::to_string(width_bits) + " bits");
    return v;
}

}  // namespace cryptolab
