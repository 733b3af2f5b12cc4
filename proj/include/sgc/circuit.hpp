#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sgc {

using WireId = uint32_t;
constexpr uint32_t kNoWire = 0xffffffffu;

enum class GateKind : uint8_t { And, Nand, Or, Nor, Xor, Xnor, Not };

/// AND-family kinds are those expressible as (a^alpha)&(b^beta)^gamma;
/// they are the only kinds that ever cost a garbled table.
inline bool is_and_family(GateKind k) {
    return k == GateKind::And || k == GateKind::Nand || k == GateKind::Or ||
           k == GateKind::Nor;
}
inline bool is_free_kind(GateKind k) { return !is_and_family(k); }

struct AndFamilyConstants {
    bool alpha, beta, gamma;
};
AndFamilyConstants and_family_constants(GateKind k);

bool eval_gate(GateKind k, bool a, bool b);

const char* gate_kind_name(GateKind k);
bool parse_gate_kind(const std::string& s, GateKind& out);

struct Gate {
    uint32_t id = 0;
    GateKind kind = GateKind::And;
    WireId in0 = 0;
    WireId in1 = kNoWire;  // kNoWire for NOT
    WireId out = 0;

    bool is_unary() const { return kind == GateKind::Not; }
    friend bool operator==(const Gate&, const Gate&) = default;
};

enum class InputClass : uint8_t { Garbler, Evaluator, Public };

struct InputBinding {
    WireId wire = 0;
    InputClass cls = InputClass::Garbler;
    uint32_t index = 0;
    friend bool operator==(const InputBinding&, const InputBinding&) = default;
};

struct FlipFlopInit {
    enum class Kind : uint8_t { Const0, Const1, Garbler, Evaluator, Public };
    Kind kind = Kind::Const0;
    uint32_t index = 0;  // meaningful for input-bound inits
    friend bool operator==(const FlipFlopInit&, const FlipFlopInit&) = default;
};

struct FlipFlop {
    WireId out = 0;
    WireId in = 0;
    FlipFlopInit init;
    friend bool operator==(const FlipFlop&, const FlipFlop&) = default;
};

/// Immutable sequential netlist. Gate ids are dense and file order is
/// topological order; both parties iterate gates in this order, so the
/// order also fixes the garbled-table stream.
struct Circuit {
    std::string name;
    uint32_t wire_count = 0;
    uint32_t garbler_input_count = 0;
    uint32_t evaluator_input_count = 0;
    uint32_t public_input_count = 0;
    std::vector<InputBinding> bindings;
    std::vector<FlipFlop> dffs;
    std::vector<Gate> gates;
    std::vector<WireId> outputs;

    friend bool operator==(const Circuit&, const Circuit&) = default;
};

struct ParseError : std::runtime_error {
    ParseError(size_t line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg),
          line(line_) {}
    size_t line;
};

Circuit parse_netlist(const std::string& text);
std::string emit_netlist(const Circuit& c);

struct Violation {
    std::string rule;     // e.g. "topological order", "single driver"
    std::string message;  // human-readable detail
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

ValidationReport validate(const Circuit& c);

/// Per-gate static consumer count: gate inputs + flip-flop inputs +
/// circuit-output occurrences reading the gate's output wire.
using StaticFanout = std::vector<uint32_t>;
StaticFanout static_fanout(const Circuit& c);

/// Terms of the fanout bound: sum of fanouts <= 2n - m + q, with
/// n = #gates, m = #gate-input slots fed by non-gates, q = #outputs +
/// #flip-flop inputs. Per-cycle reduction decrements obey the same bound.
struct FanoutBoundTerms {
    uint64_t n = 0, m = 0, q = 0;
    int64_t bound() const { return int64_t(2 * n) - int64_t(m) + int64_t(q); }
};
FanoutBoundTerms fanout_bound_terms(const Circuit& c);

/// What drives each wire. Exactly one driver per wire in a valid circuit.
struct WireDrivers {
    enum class Kind : uint8_t { None, Gate, FlipFlop, Binding };
    std::vector<Kind> kind;
    std::vector<uint32_t> index;  // gate id / dff index / binding index

    static WireDrivers build(const Circuit& c);
};

/// Gates that can reach a circuit output or a flip-flop input; everything
/// else is statically dead and is never garbled.
std::vector<uint8_t> live_gate_mask(const Circuit& c);

/// SHA-256 of the canonical (re-emitted) netlist text.
std::array<uint8_t, 32> circuit_digest(const Circuit& c);

}  // namespace sgc
