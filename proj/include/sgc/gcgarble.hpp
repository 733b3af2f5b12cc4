#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>

#include "sgc/block.hpp"
#include "sgc/circuit.hpp"
#include "sgc/rng.hpp"

namespace sgc {

/// Gate encryption oracle: first 128 bits of
/// SHA-256(label_bytes || tweak as 8 big-endian bytes).
Label gc_hash(const Label& label, uint64_t tweak);

/// Garbler-side wire: only the 0-label is stored, the 1-label is
/// x0 ^ delta under the free-XOR convention.
struct GarblerWire {
    Label x0;
};

struct GarbledTable {
    uint32_t gate_id = 0;
    Label ct0, ct1;

    static constexpr size_t kWireSize = 36;  // gate_id BE4 || ct0 || ct1
    void encode(uint8_t* out) const;
    static GarbledTable decode(const uint8_t* p);
    friend bool operator==(const GarbledTable&, const GarbledTable&) = default;
};

struct GarbleResult {
    Label ct0, ct1;
    GarblerWire out;
};

struct DecodeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Holds the global free-XOR offset and the label source for one session.
/// Confined to a single garbler; evaluation code never sees delta.
class GarblerContext {
  public:
    explicit GarblerContext(LabelRng rng);

    const Label& delta() const { return delta_; }

    GarblerWire fresh_wire() { return GarblerWire{rng_.next_label()}; }

    /// Active label for a concrete value: x0 ^ (value ? delta : 0).
    Label select(const GarblerWire& w, bool value) const {
        return value ? w.x0 ^ delta_ : w.x0;
    }

    GarblerWire invert(const GarblerWire& a) const {
        return GarblerWire{a.x0 ^ delta_};
    }
    GarblerWire xnor_offset(const GarblerWire& a, const GarblerWire& b) const {
        return GarblerWire{a.x0 ^ b.x0 ^ delta_};
    }

    /// Two-ciphertext half-gate garbling of AND/NAND/OR/NOR. tweak_base and
    /// tweak_base+1 must be fresh for this gate.
    GarbleResult garble_and_family(GateKind kind, const GarblerWire& a,
                                   const GarblerWire& b, uint64_t tweak_base) const;

  private:
    LabelRng rng_;
    Label delta_;
};

/// Free-XOR: no ciphertexts, works identically on either side.
inline GarblerWire free_xor_garble(const GarblerWire& a, const GarblerWire& b) {
    return GarblerWire{a.x0 ^ b.x0};
}
inline Label free_xor_eval(const Label& a, const Label& b) { return a ^ b; }

/// Evaluator side of the half gate. The computation is independent of the
/// concrete AND-family kind: input/output inversions are garbler-side
/// bookkeeping under free-XOR.
Label eval_and_family(GateKind kind, const Label& la, const Label& lb,
                      const GarbledTable& table, uint64_t tweak_base);

/// Maps a received output label back to a bit. Throws DecodeError when the
/// label is neither x0 nor x0^delta (protocol desynchronization).
bool decode_output(const GarblerWire& w, const Label& delta, const Label& received);

}  // namespace sgc
