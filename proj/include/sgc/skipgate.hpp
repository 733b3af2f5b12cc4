#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "sgc/bitvec.hpp"
#include "sgc/circuit.hpp"
#include "sgc/gcgarble.hpp"

namespace sgc {

/// Per-gate classification for one cycle, decided by the two input wire
/// states (and, for III, the label relation) — never by private values:
///   I   both inputs public
///   II  exactly one input public
///   III both secret with equal or inverted labels
///   IV  both secret, unrelated
enum class Category : uint8_t { I = 1, II, III, IV };

enum class Relation : uint8_t { Equal, Inverted, Unrelated };

Category classify(bool in0_public, bool in1_public, Relation relation_if_secret);

/// Outcome of folding one public input into a two-input gate, or of
/// resolving a gate whose secret inputs are equal/inverted.
struct Simplification {
    enum class Kind : uint8_t { ConstOut, PassThrough, PassInverted };
    Kind kind;
    bool bit = false;  // for ConstOut

    static Simplification constant(bool b) { return {Kind::ConstOut, b}; }
    static Simplification pass() { return {Kind::PassThrough, false}; }
    static Simplification pass_inverted() { return {Kind::PassInverted, false}; }
    friend bool operator==(const Simplification&, const Simplification&) = default;
};

Simplification simplify_with_public(GateKind kind, bool public_bit);
Simplification resolve_category_iii(GateKind kind, Relation relation);

struct CycleStats {
    uint32_t cycle = 0;  // 1-based
    uint64_t cat1 = 0, cat2 = 0, cat3 = 0, cat4 = 0;
    uint64_t tables_emitted = 0;
    uint64_t tables_filtered = 0;
    uint64_t reduction_calls = 0;  // fanout decrements executed
    uint64_t skipped = 0;          // gates never computed (fanout hit 0)

    friend bool operator==(const CycleStats&, const CycleStats&) = default;
};

struct DesyncError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EngineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {
template <class Side>
class EngineCore;
struct GarblerSide;
struct EvaluatorSide;
}  // namespace detail

/// Garbler half of the per-cycle engine. Walks the netlist twice per cycle:
/// first computing everything reachable from public values, then garbling
/// the surviving secret gates, and finally dropping tables whose gate's
/// remaining fanout fell to zero.
class GarblerEngine {
  public:
    GarblerEngine(const Circuit& c, LabelRng rng);
    GarblerEngine(const Circuit& c, uint64_t seed);
    ~GarblerEngine();
    GarblerEngine(GarblerEngine&&) noexcept;
    GarblerEngine& operator=(GarblerEngine&&) noexcept;

    void bind_public(const BitVec& p);

    Label garbler_input_label(uint32_t index, bool bit) const;
    std::pair<Label, Label> evaluator_input_labels(uint32_t index) const;

    /// Runs one cycle; appends this cycle's post-filter tables in gate-id
    /// order. Returns the cycle's statistics.
    CycleStats run_cycle(std::vector<GarbledTable>& tables_out);

    uint32_t cycles_run() const;

    struct OutputState {
        bool is_public = false;
        bool bit = false;
        GarblerWire wire;  // valid when secret
    };
    /// States of the circuit's output wires after the last run cycle.
    std::vector<OutputState> output_states() const;
    bool decode_output(size_t output_index, const Label& received) const;

    /// Introspection for tests: wire publicness after the last cycle.
    bool wire_is_public(WireId w) const;
    bool wire_public_bit(WireId w) const;

  private:
    std::unique_ptr<detail::EngineCore<detail::GarblerSide>> core_;
};

class EvaluatorEngine {
  public:
    explicit EvaluatorEngine(const Circuit& c);
    ~EvaluatorEngine();
    EvaluatorEngine(EvaluatorEngine&&) noexcept;
    EvaluatorEngine& operator=(EvaluatorEngine&&) noexcept;

    void bind_public(const BitVec& p);
    void set_garbler_input_label(uint32_t index, const Label& l);
    void set_evaluator_input_label(uint32_t index, const Label& l);

    /// Consumes this cycle's table stream (strictly increasing gate ids).
    /// Throws DesyncError on unmatched or out-of-order tables.
    CycleStats run_cycle(std::span<const GarbledTable> tables);

    uint32_t cycles_run() const;

    struct OutputShare {
        bool is_public = false;
        bool bit = false;
        Label label;  // valid when secret
    };
    std::vector<OutputShare> output_shares() const;

    bool wire_is_public(WireId w) const;
    bool wire_public_bit(WireId w) const;

  private:
    std::unique_ptr<detail::EngineCore<detail::EvaluatorSide>> core_;
};

}  // namespace sgc
