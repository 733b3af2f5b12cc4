#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sgc {

/// Bit vector helpers. Packed byte form is LSB-first: bit i lives in
/// byte i/8 at position i%8. Hex input files encode the packed bytes.
using BitVec = std::vector<uint8_t>;  // one bit per element, values 0/1

inline std::vector<uint8_t> pack_bits(const BitVec& bits) {
    std::vector<uint8_t> out((bits.size() + 7) / 8, 0);
    for (size_t i = 0; i < bits.size(); i++)
        if (bits[i]) out[i / 8] |= uint8_t(1u << (i % 8));
    return out;
}

inline BitVec unpack_bits(const std::vector<uint8_t>& bytes, size_t n_bits) {
    if (bytes.size() * 8 < n_bits)
        throw std::runtime_error("bit vector too short: need " +
                                 std::to_string(n_bits) + " bits, have " +
                                 std::to_string(bytes.size() * 8));
    BitVec bits(n_bits);
    for (size_t i = 0; i < n_bits; i++)
        bits[i] = (bytes[i / 8] >> (i % 8)) & 1;
    return bits;
}

inline BitVec bits_from_u64(uint64_t v, size_t n_bits) {
    BitVec bits(n_bits);
    for (size_t i = 0; i < n_bits && i < 64; i++) bits[i] = (v >> i) & 1;
    return bits;
}

inline uint64_t bits_to_u64(const BitVec& bits) {
    uint64_t v = 0;
    for (size_t i = 0; i < bits.size() && i < 64; i++)
        v |= uint64_t(bits[i] & 1) << i;
    return v;
}

}  // namespace sgc
