#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace sgc {

/// Incremental SHA-256 (FIPS 180-4).
class Sha256 {
  public:
    Sha256() { reset(); }

    void reset();
    void update(const uint8_t* data, size_t len);
    void update(const std::string& s) {
        update(reinterpret_cast<const uint8_t*>(s.data()), s.size());
    }
    std::array<uint8_t, 32> finish();

    static std::array<uint8_t, 32> digest(const uint8_t* data, size_t len) {
        Sha256 h;
        h.update(data, len);
        return h.finish();
    }
    static std::array<uint8_t, 32> digest(const std::string& s) {
        return digest(reinterpret_cast<const uint8_t*>(s.data()), s.size());
    }

  private:
    void compress(const uint8_t* block);

    uint32_t state_[8];
    uint64_t total_len_ = 0;
    uint8_t buf_[64];
    size_t buf_len_ = 0;
};

std::string hex_encode(const uint8_t* data, size_t len);
std::vector<uint8_t> hex_decode(const std::string& hex);

}  // namespace sgc
