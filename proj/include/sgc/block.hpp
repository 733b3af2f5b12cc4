#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <string>

namespace sgc {

/// 128-bit wire label. The least-significant bit (of w[0]) is the
/// permute/point bit used to index garbled-table rows.
struct Label {
    uint64_t w[2] = {0, 0};

    static Label zero() { return Label{}; }

    friend Label operator^(const Label& a, const Label& b) {
        return Label{{a.w[0] ^ b.w[0], a.w[1] ^ b.w[1]}};
    }
    Label& operator^=(const Label& o) {
        w[0] ^= o.w[0];
        w[1] ^= o.w[1];
        return *this;
    }
    friend bool operator==(const Label& a, const Label& b) {
        return a.w[0] == b.w[0] && a.w[1] == b.w[1];
    }
    friend bool operator!=(const Label& a, const Label& b) { return !(a == b); }

    bool lsb() const { return (w[0] & 1) != 0; }

    bool is_zero() const { return w[0] == 0 && w[1] == 0; }

    /// Serialized form: w[0] little-endian, then w[1] little-endian.
    std::array<uint8_t, 16> to_bytes() const {
        std::array<uint8_t, 16> out;
        for (int i = 0; i < 8; i++) out[i] = uint8_t(w[0] >> (8 * i));
        for (int i = 0; i < 8; i++) out[8 + i] = uint8_t(w[1] >> (8 * i));
        return out;
    }
    static Label from_bytes(const uint8_t* p) {
        Label l;
        for (int i = 0; i < 8; i++) l.w[0] |= uint64_t(p[i]) << (8 * i);
        for (int i = 0; i < 8; i++) l.w[1] |= uint64_t(p[8 + i]) << (8 * i);
        return l;
    }

    std::string hex() const {
        static const char* d = "0123456789abcdef";
        auto b = to_bytes();
        std::string s;
        s.reserve(32);
        for (uint8_t c : b) {
            s.push_back(d[c >> 4]);
            s.push_back(d[c & 15]);
        }
        return s;
    }
};

}  // namespace sgc
