#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sgc/bitvec.hpp"
#include "sgc/circuit.hpp"

namespace sgc::bench {

/// Incremental netlist builder. Gates are appended in call order, which
/// must be (and then is) topological; build() finalizes the Circuit.
class CircuitBuilder {
  public:
    explicit CircuitBuilder(std::string name) { c_.name = std::move(name); }

    WireId wire() { return c_.wire_count++; }
    std::vector<WireId> wires(size_t n) {
        std::vector<WireId> v(n);
        for (auto& w : v) w = wire();
        return v;
    }

    WireId garbler_input() { return bind(InputClass::Garbler); }
    WireId evaluator_input() { return bind(InputClass::Evaluator); }
    WireId public_input() { return bind(InputClass::Public); }

    /// Grow an input space without binding wires (for flip-flop inits).
    void declare_garbler_inputs(uint32_t n) { c_.garbler_input_count += n; }
    void declare_evaluator_inputs(uint32_t n) { c_.evaluator_input_count += n; }
    void declare_public_inputs(uint32_t n) { c_.public_input_count += n; }
    std::vector<WireId> garbler_inputs(size_t n) { return binds(InputClass::Garbler, n); }
    std::vector<WireId> evaluator_inputs(size_t n) { return binds(InputClass::Evaluator, n); }
    std::vector<WireId> public_inputs(size_t n) { return binds(InputClass::Public, n); }

    WireId gate(GateKind k, WireId a, WireId b) {
        WireId out = wire();
        c_.gates.push_back(Gate{uint32_t(c_.gates.size()), k, a, b, out});
        return out;
    }
    WireId not_gate(WireId a) {
        WireId out = wire();
        c_.gates.push_back(Gate{uint32_t(c_.gates.size()), GateKind::Not, a, kNoWire, out});
        return out;
    }

    void dff(WireId out, WireId in, FlipFlopInit init) {
        c_.dffs.push_back(FlipFlop{out, in, init});
    }

    void output(WireId w) { c_.outputs.push_back(w); }
    void output_word(const std::vector<WireId>& ws) {
        for (WireId w : ws) output(w);
    }

    Circuit build() { return std::move(c_); }

  private:
    WireId bind(InputClass cls) {
        uint32_t* count = cls == InputClass::Garbler ? &c_.garbler_input_count
                          : cls == InputClass::Evaluator ? &c_.evaluator_input_count
                                                         : &c_.public_input_count;
        WireId w = wire();
        c_.bindings.push_back(InputBinding{w, cls, (*count)++});
        return w;
    }
    std::vector<WireId> binds(InputClass cls, size_t n) {
        std::vector<WireId> v(n);
        for (auto& w : v) w = bind(cls);
        return v;
    }

    Circuit c_;
};

// Word-level building blocks; words are LSB-first wire vectors.

/// Ripple-carry sum. With keep_carry the result is one bit wider;
/// otherwise the top carry logic is still emitted but feeds nothing,
/// leaving it to the engine's dead-gate analysis. One AND-family gate
/// per bit position. b may be narrower than a.
std::vector<WireId> ripple_add(CircuitBuilder& b, const std::vector<WireId>& x,
                               const std::vector<WireId>& y, bool keep_carry);

/// x - y over equal widths, truncated (wrap-around). One AND-family gate
/// per bit position, the top one dead.
std::vector<WireId> ripple_sub(CircuitBuilder& b, const std::vector<WireId>& x,
                               const std::vector<WireId>& y);

/// Word selector (d0 when sel=0): per bit OR(AND(d0,!sel), AND(d1,sel)),
/// so a public select collapses either branch.
std::vector<WireId> mux_word(CircuitBuilder& b, WireId sel,
                             const std::vector<WireId>& d0,
                             const std::vector<WireId>& d1);

// Benchmark netlists. All are combinational (cycles = 1) with a from the
// garbler and b from the evaluator unless noted.

Circuit gen_adder(uint32_t bits);       // n-bit sum, carry-out discarded
Circuit gen_comparator(uint32_t bits);  // 1-bit a > b
Circuit gen_hamming(uint32_t bits);     // popcount(a ^ b) via adder tree
Circuit gen_mult(uint32_t bits);        // schoolbook product mod 2^n
/// ways-to-1 word selector; data words alternate garbler/evaluator,
/// select bits are public inputs. Non-power-of-two ways pad with the
/// last word.
Circuit gen_mux_tree(uint32_t width, uint32_t ways);

/// Rebinds every public input (wire bindings and flip-flop inits) to a
/// fresh garbler input, appended after the existing ones in public-index
/// order. The gate list is untouched: same netlist, nothing public.
Circuit make_public_inputs_secret(const Circuit& c);

// ---------------------------------------------------------------------------
// Tiny CPU: 16-bit, 8 registers, 8-word data memory, 16-word instruction
// memory held in flip-flops bound to public inputs. One instruction per
// cycle, no branches; data-dependent selection uses CMOVNZ.
// ---------------------------------------------------------------------------

constexpr uint32_t kCpuRegs = 8;
constexpr uint32_t kCpuWordBits = 16;
constexpr uint32_t kCpuDataWords = 8;
constexpr uint32_t kCpuImemWords = 16;
constexpr uint32_t kCpuPublicBits = kCpuImemWords * kCpuWordBits;

enum class Opcode : uint8_t {
    Halt = 0x0,
    Ldi = 0x1,
    Mov = 0x2,
    Add = 0x3,
    Sub = 0x4,
    And = 0x5,
    Xor = 0x6,
    Shr = 0x7,
    Cmovnz = 0x8,
    Ld = 0x9,
    St = 0xA,
};

struct MemBind {
    enum class Kind : uint8_t { Const, Garbler, Evaluator };
    Kind kind = Kind::Const;
    uint16_t value = 0;  // for Const
};

struct TinyCpuProgram {
    std::vector<uint16_t> words;
    std::array<MemBind, kCpuDataWords> mem{};
};

struct AsmError : std::runtime_error {
    AsmError(size_t line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg),
          line(line_) {}
    size_t line;
};

TinyCpuProgram assemble(const std::string& source);
std::string disassemble(const TinyCpuProgram& prog);

struct TinyCpuCircuit {
    Circuit circuit;
    uint32_t cycles = 0;  // program length: one instruction per cycle

    // introspection hooks (wire ids in `circuit`)
    std::vector<WireId> pc_wires;
    std::vector<WireId> control_wires;  // fetch/decode/enable signals
    std::array<std::vector<WireId>, kCpuRegs> reg_wires;
    std::array<std::vector<WireId>, kCpuDataWords> mem_wires;
};

TinyCpuCircuit gen_tinycpu(const TinyCpuProgram& prog);

/// The program as the circuit's 256 public input bits (unused instruction
/// words read as HALT).
BitVec tinycpu_public_bits(const TinyCpuProgram& prog);

/// Private input vectors for the bound data-memory words, in address
/// order. Values beyond the bound words are ignored.
BitVec tinycpu_garbler_bits(const TinyCpuProgram& prog,
                            const std::array<uint16_t, kCpuDataWords>& values);
BitVec tinycpu_evaluator_bits(const TinyCpuProgram& prog,
                              const std::array<uint16_t, kCpuDataWords>& values);

}  // namespace sgc::bench
