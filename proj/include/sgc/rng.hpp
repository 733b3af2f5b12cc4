#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "sgc/block.hpp"

namespace sgc {

/// Deterministic random generator for wire labels, built as a SHA-256
/// counter DRBG. Seeded from the OS entropy source by default; an explicit
/// 64-bit seed makes label generation reproducible for tests and golden
/// transcripts.
class LabelRng {
  public:
    LabelRng();  // entropy-seeded
    explicit LabelRng(uint64_t seed);

    Label next_label();
    uint64_t next_u64();

  private:
    void refill();

    std::array<uint8_t, 32> key_;
    uint64_t counter_ = 0;
    std::array<uint8_t, 32> pool_;
    size_t pool_off_ = 32;
};

}  // namespace sgc
