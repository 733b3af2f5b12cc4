#include "sgc/rng.hpp"

#include <cstring>
#include <random>

#include "sgc/sha256.hpp"

namespace sgc {

LabelRng::LabelRng() {
    std::random_device rd;
    uint32_t raw[8];
    for (auto& v : raw) v = rd();
    key_ = Sha256::digest(reinterpret_cast<const uint8_t*>(raw), sizeof(raw));
}

LabelRng::LabelRng(uint64_t seed) {
    uint8_t buf[16 + 8];
    std::memcpy(buf, "sgc-label-seed-v", 16);
    for (int i = 0; i < 8; i++) buf[16 + i] = uint8_t(seed >> (8 * i));
    key_ = Sha256::digest(buf, sizeof(buf));
}

void LabelRng::refill() {
    uint8_t buf[32 + 8];
    std::memcpy(buf, key_.data(), 32);
    for (int i = 0; i < 8; i++) buf[32 + i] = uint8_t(counter_ >> (8 * i));
    counter_++;
    pool_ = Sha256::digest(buf, sizeof(buf));
    pool_off_ = 0;
}

Label LabelRng::next_label() {
    if (pool_off_ + 16 > 32) refill();
    Label l = Label::from_bytes(pool_.data() + pool_off_);
    pool_off_ += 16;
    return l;
}

uint64_t LabelRng::next_u64() {
    if (pool_off_ + 8 > 32) refill();
    uint64_t v = 0;
    for (int i = 0; i < 8; i++) v |= uint64_t(pool_[pool_off_ + i]) << (8 * i);
    pool_off_ += 8;
    return v;
}

}  // namespace sgc
