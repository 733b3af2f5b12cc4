#include "sgc/gcgarble.hpp"

#include "sgc/sha256.hpp"

namespace sgc {

Label gc_hash(const Label& label, uint64_t tweak) {
    uint8_t buf[24];
    auto lb = label.to_bytes();
    std::copy(lb.begin(), lb.end(), buf);
    for (int i = 0; i < 8; i++) buf[16 + i] = uint8_t(tweak >> (56 - 8 * i));
    auto d = Sha256::digest(buf, sizeof(buf));
    return Label::from_bytes(d.data());
}

void GarbledTable::encode(uint8_t* out) const {
    out[0] = uint8_t(gate_id >> 24);
    out[1] = uint8_t(gate_id >> 16);
    out[2] = uint8_t(gate_id >> 8);
    out[3] = uint8_t(gate_id);
    auto b0 = ct0.to_bytes(), b1 = ct1.to_bytes();
    std::copy(b0.begin(), b0.end(), out + 4);
    std::copy(b1.begin(), b1.end(), out + 20);
}

GarbledTable GarbledTable::decode(const uint8_t* p) {
    GarbledTable t;
    t.gate_id = uint32_t(p[0]) << 24 | uint32_t(p[1]) << 16 | uint32_t(p[2]) << 8 |
                uint32_t(p[3]);
    t.ct0 = Label::from_bytes(p + 4);
    t.ct1 = Label::from_bytes(p + 20);
    return t;
}

GarblerContext::GarblerContext(LabelRng rng) : rng_(std::move(rng)) {
    delta_ = rng_.next_label();
    delta_.w[0] |= 1;  // delta = R || 1: permute bits of x0/x1 always differ
}

GarbleResult GarblerContext::garble_and_family(GateKind kind, const GarblerWire& a,
                                               const GarblerWire& b,
                                               uint64_t tweak_base) const {
    const auto [alpha, beta, gamma] = and_family_constants(kind);

    // Fold NAND/OR/NOR into AND by offsetting the virtual 0-labels; the
    // evaluator's held labels are already the active labels of the virtual
    // wires, so its computation stays kind-independent.
    const Label a0 = alpha ? a.x0 ^ delta_ : a.x0;
    const Label b0 = beta ? b.x0 ^ delta_ : b.x0;
    const bool pa = a0.lsb();
    const bool pb = b0.lsb();

    const Label ha0 = gc_hash(a0, tweak_base);
    const Label ha1 = gc_hash(a0 ^ delta_, tweak_base);
    const Label hb0 = gc_hash(b0, tweak_base + 1);
    const Label hb1 = gc_hash(b0 ^ delta_, tweak_base + 1);

    GarbleResult r;
    // generator half: computes a AND pb
    r.ct0 = ha0 ^ ha1;
    if (pb) r.ct0 ^= delta_;
    Label wg = ha0;
    if (pa) wg ^= r.ct0;
    // evaluator half: computes a AND (b XOR pb)
    r.ct1 = hb0 ^ hb1 ^ a0;
    Label we = hb0;
    if (pb) we ^= r.ct1 ^ a0;

    r.out.x0 = wg ^ we;
    if (gamma) r.out.x0 ^= delta_;
    return r;
}

Label eval_and_family(GateKind kind, const Label& la, const Label& lb,
                      const GarbledTable& table, uint64_t tweak_base) {
    (void)kind;  // inversions are folded into the table by the garbler
    Label wg = gc_hash(la, tweak_base);
    if (la.lsb()) wg ^= table.ct0;
    Label we = gc_hash(lb, tweak_base + 1);
    if (lb.lsb()) we ^= table.ct1 ^ la;
    return wg ^ we;
}

bool decode_output(const GarblerWire& w, const Label& delta, const Label& received) {
    if (received == w.x0) return false;
    if (received == (w.x0 ^ delta)) return true;
    throw DecodeError("unrecognized output label: protocol desynchronization");
}

}  // namespace sgc
