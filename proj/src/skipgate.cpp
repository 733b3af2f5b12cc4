#include "sgc/skipgate.hpp"

#include <algorithm>
#include <cassert>

namespace sgc {

Category classify(bool in0_public, bool in1_public, Relation relation_if_secret) {
    if (in0_public && in1_public) return Category::I;
    if (in0_public || in1_public) return Category::II;
    return relation_if_secret == Relation::Unrelated ? Category::IV : Category::III;
}

Simplification simplify_with_public(GateKind kind, bool v) {
    switch (kind) {
        case GateKind::And:
            return v ? Simplification::pass() : Simplification::constant(false);
        case GateKind::Nand:
            return v ? Simplification::pass_inverted() : Simplification::constant(true);
        case GateKind::Or:
            return v ? Simplification::constant(true) : Simplification::pass();
        case GateKind::Nor:
            return v ? Simplification::constant(false) : Simplification::pass_inverted();
        case GateKind::Xor:
            return v ? Simplification::pass_inverted() : Simplification::pass();
        case GateKind::Xnor:
            return v ? Simplification::pass() : Simplification::pass_inverted();
        case GateKind::Not:
            break;
    }
    throw std::logic_error("simplify_with_public needs a two-input kind");
}

Simplification resolve_category_iii(GateKind kind, Relation rel) {
    if (rel == Relation::Equal) {
        switch (kind) {
            case GateKind::Xor: return Simplification::constant(false);
            case GateKind::Xnor: return Simplification::constant(true);
            case GateKind::And:
            case GateKind::Or: return Simplification::pass();
            case GateKind::Nand:
            case GateKind::Nor: return Simplification::pass_inverted();
            default: break;
        }
    } else if (rel == Relation::Inverted) {
        switch (kind) {
            case GateKind::Xor: return Simplification::constant(true);
            case GateKind::Xnor: return Simplification::constant(false);
            case GateKind::And:
            case GateKind::Nor: return Simplification::constant(false);
            case GateKind::Or:
            case GateKind::Nand: return Simplification::constant(true);
            default: break;
        }
    }
    throw std::logic_error("resolve_category_iii needs Equal or Inverted");
}

namespace detail {

// ---------------------------------------------------------------------------
// Side policies: the label algebra that differs between the two parties.
// All control flow (classification, fanout evolution, table-stream shape)
// lives in EngineCore and is byte-for-byte shared, which is what makes the
// two parties' decisions provably identical.
// ---------------------------------------------------------------------------

struct GarblerSide {
    static constexpr bool kIsGarbler = true;

    struct Secret {
        GarblerWire w;
    };

    GarblerContext ctx;
    std::vector<GarblerWire> g_inputs;
    std::vector<GarblerWire> e_inputs;
    std::vector<GarbledTable> pending;  // this cycle, pre-filter

    GarblerSide(LabelRng rng, const Circuit& c) : ctx(std::move(rng)) {
        g_inputs.reserve(c.garbler_input_count);
        for (uint32_t i = 0; i < c.garbler_input_count; i++)
            g_inputs.push_back(ctx.fresh_wire());
        e_inputs.reserve(c.evaluator_input_count);
        for (uint32_t i = 0; i < c.evaluator_input_count; i++)
            e_inputs.push_back(ctx.fresh_wire());
    }

    Secret apply_inv(Secret s, bool inv) const {
        if (inv) s.w = ctx.invert(s.w);
        return s;
    }
    Secret xor_op(const Secret& a, const Secret& b) const {
        return {free_xor_garble(a.w, b.w)};
    }
    Secret xnor_op(const Secret& a, const Secret& b) const {
        return {ctx.xnor_offset(a.w, b.w)};
    }
    Relation relation(const Secret& a, const Secret& b) const {
        if (a.w.x0 == b.w.x0) return Relation::Equal;
        if (a.w.x0 == (b.w.x0 ^ ctx.delta())) return Relation::Inverted;
        return Relation::Unrelated;
    }
    Secret garbler_input(uint32_t i) const { return {g_inputs.at(i)}; }
    Secret evaluator_input(uint32_t i) const { return {e_inputs.at(i)}; }
};

struct EvaluatorSide {
    static constexpr bool kIsGarbler = false;

    struct Secret {
        Label label;
        bool flip = false;   // NOT-parity since label creation
        bool taint = false;  // placeholder namespace, never evaluable
    };

    std::vector<Label> g_inputs;
    std::vector<Label> e_inputs;
    std::vector<uint8_t> g_set, e_set;
    uint64_t placeholder_counter = 0;  // session-wide, strictly monotonic

    std::span<const GarbledTable> stream;  // this cycle
    size_t cursor = 0;

    explicit EvaluatorSide(const Circuit& c)
        : g_inputs(c.garbler_input_count),
          e_inputs(c.evaluator_input_count),
          g_set(c.garbler_input_count, 0),
          e_set(c.evaluator_input_count, 0) {}

    Secret apply_inv(Secret s, bool inv) const {
        s.flip ^= inv;
        return s;
    }
    Secret xor_op(const Secret& a, const Secret& b) const {
        return {a.label ^ b.label, bool(a.flip ^ b.flip), a.taint || b.taint};
    }
    Secret xnor_op(const Secret& a, const Secret& b) const {
        return {a.label ^ b.label, !(a.flip ^ b.flip), a.taint || b.taint};
    }
    Relation relation(const Secret& a, const Secret& b) const {
        if (a.taint != b.taint) return Relation::Unrelated;
        if (a.label != b.label) return Relation::Unrelated;
        return a.flip == b.flip ? Relation::Equal : Relation::Inverted;
    }
    Secret fresh_placeholder() {
        Label l;
        l.w[0] = ++placeholder_counter;
        l.w[1] = 0;
        return {l, false, true};
    }
    Secret garbler_input(uint32_t i) const {
        if (!g_set.at(i)) throw EngineError("garbler input label not delivered");
        return {g_inputs[i], false, false};
    }
    Secret evaluator_input(uint32_t i) const {
        if (!e_set.at(i)) throw EngineError("evaluator input label not delivered");
        return {e_inputs[i], false, false};
    }
};

// ---------------------------------------------------------------------------

template <class Side>
class EngineCore {
  public:
    using Secret = typename Side::Secret;

    EngineCore(const Circuit& circuit, Side side)
        : c(circuit),
          side_(std::move(side)),
          drivers_(WireDrivers::build(circuit)),
          static_fan_(static_fanout(circuit)) {
        auto rep = validate(circuit);
        if (!rep.ok())
            throw EngineError("invalid circuit: " + rep.violations.front().rule +
                              " (" + rep.violations.front().message + ")");
        states_.resize(c.wire_count);
        fanout_.resize(c.gates.size());
        resolved_.resize(c.gates.size());
        ff_next_.resize(c.dffs.size());
    }

    struct WireState {
        enum class Tag : uint8_t { Unset, Public, Secret, Deferred };
        Tag tag = Tag::Unset;
        bool bit = false;   // Public
        bool inv = false;   // Deferred
        WireId root = 0;    // Deferred
        Secret sec{};       // Secret
    };

    struct View {
        enum class Tag : uint8_t { Pending, Public, Secret };
        Tag tag = Tag::Pending;
        bool bit = false;
        Secret sec{};
    };

    View resolve(WireId w) const {
        const WireState& s = states_[w];
        switch (s.tag) {
            case WireState::Tag::Public:
                return {View::Tag::Public, s.bit, {}};
            case WireState::Tag::Secret:
                return {View::Tag::Secret, false, s.sec};
            case WireState::Tag::Deferred: {
                // An alias root can itself turn into an alias later (a
                // pass-through resolved after this one was recorded), so
                // chase the chain and compress it.
                bool inv = s.inv;
                WireId root = s.root;
                while (states_[root].tag == WireState::Tag::Deferred) {
                    inv ^= states_[root].inv;
                    root = states_[root].root;
                }
                WireState& me = states_[w];
                me.root = root;
                me.inv = inv;
                const WireState& r = states_[root];
                if (r.tag == WireState::Tag::Public)
                    return {View::Tag::Public, bool(r.bit ^ inv), {}};
                if (r.tag == WireState::Tag::Secret)
                    return {View::Tag::Secret, false, side_.apply_inv(r.sec, inv)};
                return {};
            }
            default:
                return {};
        }
    }

    void bind_public(const BitVec& p) {
        if (p.size() != c.public_input_count)
            throw EngineError("public input vector length mismatch");
        pub_ = p;
        pub_bound_ = true;
    }

    CycleStats run_cycle() {
        cycle_++;
        stats_ = CycleStats{};
        stats_.cycle = cycle_;
        begin_cycle_states();
        std::copy(static_fan_.begin(), static_fan_.end(), fanout_.begin());
        std::fill(resolved_.begin(), resolved_.end(), uint8_t(0));
        tweak_counter_ = 0;
        if constexpr (Side::kIsGarbler) {
            side_.pending.clear();
        } else {
            side_.cursor = 0;
        }
        phase1();
        phase2();
        copy_ff_labels();
        return stats_;
    }

    Side& side() { return side_; }
    const Side& side() const { return side_; }
    uint32_t cycle() const { return cycle_; }
    const CycleStats& stats() const { return stats_; }

    bool wire_is_public(WireId w) const {
        return w < c.wire_count && resolve(w).tag == View::Tag::Public;
    }
    bool wire_public_bit(WireId w) const {
        auto v = resolve(w);
        if (v.tag != View::Tag::Public) throw EngineError("wire is not public");
        return v.bit;
    }

    /// Resolved output-wire views after the last cycle, in output order.
    std::vector<View> output_views() const {
        std::vector<View> out;
        out.reserve(c.outputs.size());
        for (WireId w : c.outputs) {
            View v = resolve(w);
            if (v.tag == View::Tag::Pending)
                throw EngineError("circuit output never materialized");
            out.push_back(v);
        }
        return out;
    }

    const Circuit& c;

  private:
    void set_public(WireId w, bool bit) {
        states_[w] = WireState{WireState::Tag::Public, bit, false, 0, {}};
    }
    void set_secret(WireId w, const Secret& s) {
        states_[w] = WireState{WireState::Tag::Secret, false, false, 0, s};
    }
    void set_deferred(WireId w, WireId src, bool inv) {
        const WireState& s = states_[src];
        switch (s.tag) {
            case WireState::Tag::Public:
                set_public(w, s.bit ^ inv);
                break;
            case WireState::Tag::Secret:
                set_secret(w, side_.apply_inv(s.sec, inv));
                break;
            case WireState::Tag::Deferred:
                states_[w] = WireState{WireState::Tag::Deferred, false,
                                       bool(s.inv ^ inv), s.root, {}};
                break;
            default:
                states_[w] = WireState{WireState::Tag::Deferred, false, inv, src, {}};
        }
    }

    void begin_cycle_states() {
        std::fill(states_.begin(), states_.end(), WireState{});
        if (c.public_input_count > 0 && !pub_bound_)
            throw EngineError("public inputs not bound");
        for (const auto& b : c.bindings) {
            switch (b.cls) {
                case InputClass::Garbler:
                    set_secret(b.wire, side_.garbler_input(b.index));
                    break;
                case InputClass::Evaluator:
                    set_secret(b.wire, side_.evaluator_input(b.index));
                    break;
                case InputClass::Public:
                    set_public(b.wire, pub_[b.index] != 0);
                    break;
            }
        }
        for (size_t i = 0; i < c.dffs.size(); i++) {
            const auto& ff = c.dffs[i];
            if (cycle_ > 1) {
                states_[ff.out] = ff_next_[i];
                continue;
            }
            switch (ff.init.kind) {
                case FlipFlopInit::Kind::Const0: set_public(ff.out, false); break;
                case FlipFlopInit::Kind::Const1: set_public(ff.out, true); break;
                case FlipFlopInit::Kind::Garbler:
                    set_secret(ff.out, side_.garbler_input(ff.init.index));
                    break;
                case FlipFlopInit::Kind::Evaluator:
                    set_secret(ff.out, side_.evaluator_input(ff.init.index));
                    break;
                case FlipFlopInit::Kind::Public:
                    set_public(ff.out, pub_[ff.init.index] != 0);
                    break;
            }
        }
    }

    // Phase 1: everything computable from public values (categories i-ii).
    void phase1() {
        for (const Gate& g : c.gates) {
            if (g.is_unary()) {
                View v = resolve(g.in0);
                if (v.tag == View::Tag::Public) {
                    set_public(g.out, !v.bit);
                    fanout_[g.id] = 0;
                    resolved_[g.id] = 1;
                    stats_.cat1++;
                }
                continue;  // secret NOT handled as a free gate in phase 2
            }
            View a = resolve(g.in0);
            View b = resolve(g.in1);
            const bool ap = a.tag == View::Tag::Public;
            const bool bp = b.tag == View::Tag::Public;
            if (ap && bp) {
                set_public(g.out, eval_gate(g.kind, a.bit, b.bit));
                fanout_[g.id] = 0;
                resolved_[g.id] = 1;
                stats_.cat1++;
            } else if (ap || bp) {
                apply_one_public(g, ap ? a.bit : b.bit, ap ? g.in1 : g.in0);
                resolved_[g.id] = 1;
                stats_.cat2++;
            }
        }
    }

    void apply_one_public(const Gate& g, bool public_bit, WireId secret_wire) {
        Simplification s = simplify_with_public(g.kind, public_bit);
        switch (s.kind) {
            case Simplification::Kind::ConstOut:
                set_public(g.out, s.bit);
                // The gate's label is not needed by anyone, and the secret
                // input loses one consumer.
                fanout_[g.id] = 0;
                reduce_from_wire(secret_wire);
                break;
            case Simplification::Kind::PassThrough:
                set_deferred(g.out, secret_wire, false);
                break;
            case Simplification::Kind::PassInverted:
                set_deferred(g.out, secret_wire, true);
                break;
        }
    }

    // Phase 2: surviving gates in id order. Wires may still turn public
    // here (category iii), so the public-input cases reappear.
    void phase2() {
        for (const Gate& g : c.gates) {
            if (resolved_[g.id]) continue;
            if (fanout_[g.id] == 0) {
                stats_.skipped++;
                continue;
            }
            process_phase2_gate(g);
            resolved_[g.id] = 1;
        }
        if constexpr (Side::kIsGarbler) {
            // Drop tables whose gate died after it was garbled (Phase 2
            // public discoveries cascade backwards); survivors keep gate-id
            // order.
            size_t kept = 0;
            for (size_t i = 0; i < side_.pending.size(); i++) {
                if (fanout_[side_.pending[i].gate_id] > 0) {
                    if (kept != i) side_.pending[kept] = side_.pending[i];
                    kept++;
                } else {
                    stats_.tables_filtered++;
                }
            }
            side_.pending.resize(kept);
            stats_.tables_emitted = kept;
        } else {
            if (side_.cursor != side_.stream.size())
                throw DesyncError("unconsumed garbled tables at end of cycle");
        }
    }

    void process_phase2_gate(const Gate& g) {
        if (g.is_unary()) {
            View v = resolve(g.in0);
            if (v.tag == View::Tag::Public) {
                set_public(g.out, !v.bit);
                fanout_[g.id] = 0;
                stats_.cat1++;
            } else if (v.tag == View::Tag::Secret) {
                set_secret(g.out, side_.apply_inv(v.sec, true));
                stats_.cat4++;
            } else {
                throw EngineError("live NOT gate with unmaterialized input");
            }
            return;
        }
        View a = resolve(g.in0);
        View b = resolve(g.in1);
        const bool ap = a.tag == View::Tag::Public;
        const bool bp = b.tag == View::Tag::Public;
        if (ap && bp) {
            set_public(g.out, eval_gate(g.kind, a.bit, b.bit));
            fanout_[g.id] = 0;
            stats_.cat1++;
            return;
        }
        if (ap || bp) {
            apply_one_public(g, ap ? a.bit : b.bit, ap ? g.in1 : g.in0);
            stats_.cat2++;
            return;
        }
        if (a.tag != View::Tag::Secret || b.tag != View::Tag::Secret)
            throw EngineError("live gate with unmaterialized input");

        Relation rel = side_.relation(a.sec, b.sec);
        if (rel != Relation::Unrelated) {
            Simplification s = resolve_category_iii(g.kind, rel);
            switch (s.kind) {
                case Simplification::Kind::ConstOut:
                    set_public(g.out, s.bit);
                    fanout_[g.id] = 0;
                    reduce_from_wire(g.in0);
                    reduce_from_wire(g.in1);
                    break;
                case Simplification::Kind::PassThrough:
                    set_secret(g.out, a.sec);
                    break;
                case Simplification::Kind::PassInverted:
                    set_secret(g.out, side_.apply_inv(a.sec, true));
                    break;
            }
            stats_.cat3++;
            return;
        }

        // category iv
        stats_.cat4++;
        if (g.kind == GateKind::Xor) {
            set_secret(g.out, side_.xor_op(a.sec, b.sec));
            return;
        }
        if (g.kind == GateKind::Xnor) {
            set_secret(g.out, side_.xnor_op(a.sec, b.sec));
            return;
        }
        const uint64_t tweak = (uint64_t(cycle_) << 32) | tweak_counter_;
        tweak_counter_ += 2;
        if constexpr (Side::kIsGarbler) {
            auto r = side_.ctx.garble_and_family(g.kind, a.sec.w, b.sec.w, tweak);
            side_.pending.push_back(GarbledTable{g.id, r.ct0, r.ct1});
            set_secret(g.out, Secret{r.out});
        } else {
            if (side_.cursor < side_.stream.size()) {
                const GarbledTable& t = side_.stream[side_.cursor];
                if (t.gate_id < g.id)
                    throw DesyncError("garbled table for gate " +
                                      std::to_string(t.gate_id) +
                                      " matches no pending gate");
                if (t.gate_id == g.id) {
                    if (a.sec.taint || b.sec.taint)
                        throw EngineError(
                            "placeholder label fed to a live garbled gate");
                    side_.cursor++;
                    Label out = eval_and_family(g.kind, a.sec.label, b.sec.label,
                                                t, tweak);
                    set_secret(g.out, Secret{out, false, false});
                    stats_.tables_emitted++;
                    return;
                }
            }
            // The garbler filtered this gate's table after a later public
            // discovery; its fanout will provably reach zero.
            set_secret(g.out, side_.fresh_placeholder());
            stats_.tables_filtered++;
        }
    }

    // Recursive fanout reduction, run iteratively. Each decrement consumes
    // one unit of the statically initialized fanout, so decrements per
    // cycle are bounded by the static fanout sum.
    void reduce_from_wire(WireId w) {
        reduce_stack_.clear();
        reduce_stack_.push_back(w);
        while (!reduce_stack_.empty()) {
            WireId cur = reduce_stack_.back();
            reduce_stack_.pop_back();
            if (wire_public_now(cur)) continue;
            if (drivers_.kind[cur] != WireDrivers::Kind::Gate) continue;
            const uint32_t gid = drivers_.index[cur];
            if (fanout_[gid] == 0) continue;
            fanout_[gid]--;
            stats_.reduction_calls++;
            if (fanout_[gid] == 0) {
                const Gate& g = c.gates[gid];
                reduce_stack_.push_back(g.in0);
                if (!g.is_unary()) reduce_stack_.push_back(g.in1);
            }
        }
    }

    bool wire_public_now(WireId w) const {
        return resolve(w).tag == View::Tag::Public;
    }

    void copy_ff_labels() {
        for (size_t i = 0; i < c.dffs.size(); i++) {
            View v = resolve(c.dffs[i].in);
            if (v.tag == View::Tag::Public) {
                ff_next_[i] = WireState{WireState::Tag::Public, v.bit, false, 0, {}};
            } else if (v.tag == View::Tag::Secret) {
                ff_next_[i] =
                    WireState{WireState::Tag::Secret, false, false, 0, v.sec};
            } else {
                throw EngineError("flip-flop input wire never materialized");
            }
        }
    }

    Side side_;
    WireDrivers drivers_;
    StaticFanout static_fan_;
    BitVec pub_;
    bool pub_bound_ = false;
    uint32_t cycle_ = 0;
    uint64_t tweak_counter_ = 0;
    CycleStats stats_;
    mutable std::vector<WireState> states_;  // resolve() compresses alias chains
    std::vector<uint32_t> fanout_;
    std::vector<uint8_t> resolved_;
    std::vector<WireState> ff_next_;
    std::vector<WireId> reduce_stack_;
};

template class EngineCore<GarblerSide>;
template class EngineCore<EvaluatorSide>;

}  // namespace detail

// ---------------------------------------------------------------------------
// GarblerEngine
// ---------------------------------------------------------------------------

GarblerEngine::GarblerEngine(const Circuit& c, LabelRng rng)
    : core_(std::make_unique<detail::EngineCore<detail::GarblerSide>>(
          c, detail::GarblerSide(std::move(rng), c))) {}
GarblerEngine::GarblerEngine(const Circuit& c, uint64_t seed)
    : GarblerEngine(c, LabelRng(seed)) {}
GarblerEngine::~GarblerEngine() = default;
GarblerEngine::GarblerEngine(GarblerEngine&&) noexcept = default;
GarblerEngine& GarblerEngine::operator=(GarblerEngine&&) noexcept = default;

void GarblerEngine::bind_public(const BitVec& p) { core_->bind_public(p); }

Label GarblerEngine::garbler_input_label(uint32_t index, bool bit) const {
    const auto& s = core_->side();
    return s.ctx.select(s.g_inputs.at(index), bit);
}

std::pair<Label, Label> GarblerEngine::evaluator_input_labels(uint32_t index) const {
    const auto& s = core_->side();
    const GarblerWire& w = s.e_inputs.at(index);
    return {w.x0, s.ctx.select(w, true)};
}

CycleStats GarblerEngine::run_cycle(std::vector<GarbledTable>& tables_out) {
    CycleStats st = core_->run_cycle();
    const auto& pending = core_->side().pending;  // already filtered
    tables_out.insert(tables_out.end(), pending.begin(), pending.end());
    return st;
}

uint32_t GarblerEngine::cycles_run() const { return core_->cycle(); }

std::vector<GarblerEngine::OutputState> GarblerEngine::output_states() const {
    std::vector<OutputState> out;
    for (const auto& v : core_->output_views()) {
        OutputState s;
        if (v.tag == detail::EngineCore<detail::GarblerSide>::View::Tag::Public) {
            s.is_public = true;
            s.bit = v.bit;
        } else {
            s.wire = v.sec.w;
        }
        out.push_back(s);
    }
    return out;
}

bool GarblerEngine::decode_output(size_t output_index, const Label& received) const {
    using V = detail::EngineCore<detail::GarblerSide>::View;
    V v = core_->resolve(core_->c.outputs.at(output_index));
    if (v.tag != V::Tag::Secret)
        throw EngineError("output is not a secret wire, nothing to decode");
    return sgc::decode_output(v.sec.w, core_->side().ctx.delta(), received);
}

bool GarblerEngine::wire_is_public(WireId w) const { return core_->wire_is_public(w); }
bool GarblerEngine::wire_public_bit(WireId w) const { return core_->wire_public_bit(w); }

// ---------------------------------------------------------------------------
// EvaluatorEngine
// ---------------------------------------------------------------------------

EvaluatorEngine::EvaluatorEngine(const Circuit& c)
    : core_(std::make_unique<detail::EngineCore<detail::EvaluatorSide>>(
          c, detail::EvaluatorSide(c))) {}
EvaluatorEngine::~EvaluatorEngine() = default;
EvaluatorEngine::EvaluatorEngine(EvaluatorEngine&&) noexcept = default;
EvaluatorEngine& EvaluatorEngine::operator=(EvaluatorEngine&&) noexcept = default;

void EvaluatorEngine::bind_public(const BitVec& p) { core_->bind_public(p); }

void EvaluatorEngine::set_garbler_input_label(uint32_t index, const Label& l) {
    auto& s = core_->side();
    s.g_inputs.at(index) = l;
    s.g_set.at(index) = 1;
}
void EvaluatorEngine::set_evaluator_input_label(uint32_t index, const Label& l) {
    auto& s = core_->side();
    s.e_inputs.at(index) = l;
    s.e_set.at(index) = 1;
}

CycleStats EvaluatorEngine::run_cycle(std::span<const GarbledTable> tables) {
    core_->side().stream = tables;
    try {
        CycleStats st = core_->run_cycle();
        core_->side().stream = {};
        return st;
    } catch (...) {
        core_->side().stream = {};
        throw;
    }
}

uint32_t EvaluatorEngine::cycles_run() const { return core_->cycle(); }

std::vector<EvaluatorEngine::OutputShare> EvaluatorEngine::output_shares() const {
    std::vector<OutputShare> out;
    for (const auto& v : core_->output_views()) {
        OutputShare s;
        using V = detail::EngineCore<detail::EvaluatorSide>::View;
        if (v.tag == V::Tag::Public) {
            s.is_public = true;
            s.bit = v.bit;
        } else {
            if (v.sec.taint)
                throw EngineError("placeholder label reached a circuit output");
            s.label = v.sec.label;
        }
        out.push_back(s);
    }
    return out;
}

bool EvaluatorEngine::wire_is_public(WireId w) const { return core_->wire_is_public(w); }
bool EvaluatorEngine::wire_public_bit(WireId w) const { return core_->wire_public_bit(w); }

}  // namespace sgc
