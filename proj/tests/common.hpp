#pragma once

#include <random>
#include <thread>

#include "sgc/benchgen.hpp"
#include "sgc/circuit.hpp"
#include "sgc/oracle.hpp"
#include "sgc/protocol.hpp"

namespace sgc::test {

struct RandomCircuitParams {
    uint32_t gates = 40;
    uint32_t garbler_bits = 4;
    uint32_t evaluator_bits = 4;
    uint32_t public_bits = 4;
    uint32_t dffs = 2;
    uint32_t outputs = 4;
};

/// Random valid netlist. Small wire pools make repeated and inverted
/// operands common, which keeps the equal/inverted-label paths busy.
inline Circuit random_circuit(const RandomCircuitParams& prm, uint64_t seed) {
    std::mt19937_64 rng(seed);
    bench::CircuitBuilder b("rand" + std::to_string(seed));
    std::vector<WireId> pool;
    for (uint32_t i = 0; i < prm.garbler_bits; i++) pool.push_back(b.garbler_input());
    for (uint32_t i = 0; i < prm.evaluator_bits; i++) pool.push_back(b.evaluator_input());
    for (uint32_t i = 0; i < prm.public_bits; i++) pool.push_back(b.public_input());
    std::vector<WireId> ff_out = b.wires(prm.dffs);
    pool.insert(pool.end(), ff_out.begin(), ff_out.end());

    auto pick = [&]() { return pool[rng() % pool.size()]; };
    for (uint32_t i = 0; i < prm.gates; i++) {
        auto kind = GateKind(rng() % 7);
        WireId out = kind == GateKind::Not ? b.not_gate(pick())
                                           : b.gate(kind, pick(), pick());
        pool.push_back(out);
    }
    for (uint32_t i = 0; i < prm.dffs; i++) {
        FlipFlopInit init;
        switch (rng() % 5) {
            case 0: init.kind = FlipFlopInit::Kind::Const0; break;
            case 1: init.kind = FlipFlopInit::Kind::Const1; break;
            case 2:
                init.kind = FlipFlopInit::Kind::Garbler;
                init.index = uint32_t(rng() % prm.garbler_bits);
                break;
            case 3:
                init.kind = FlipFlopInit::Kind::Evaluator;
                init.index = uint32_t(rng() % prm.evaluator_bits);
                break;
            default:
                init.kind = FlipFlopInit::Kind::Public;
                init.index = uint32_t(rng() % prm.public_bits);
                break;
        }
        b.dff(ff_out[i], pick(), init);
    }
    for (uint32_t i = 0; i < prm.outputs; i++) b.output(pick());
    return b.build();
}

inline BitVec random_bits(std::mt19937_64& rng, size_t n) {
    BitVec v(n);
    for (auto& x : v) x = uint8_t(rng() & 1);
    return v;
}

struct EnginePair {
    BitVec outputs;
    std::vector<CycleStats> garbler_stats;
    std::vector<CycleStats> evaluator_stats;
    uint64_t total_tables = 0;
};

/// Drives both engines directly (no framing, no OT): the garbler's label
/// tied to each input bit is handed straight to the evaluator.
inline EnginePair run_engine_pair(const Circuit& c, const BitVec& a,
                                  const BitVec& b, const BitVec& p,
                                  uint32_t cycles, uint64_t seed = 42) {
    GarblerEngine g(c, seed);
    EvaluatorEngine e(c);
    g.bind_public(p);
    e.bind_public(p);
    for (uint32_t i = 0; i < c.garbler_input_count; i++)
        e.set_garbler_input_label(i, g.garbler_input_label(i, a[i] != 0));
    for (uint32_t i = 0; i < c.evaluator_input_count; i++) {
        auto [l0, l1] = g.evaluator_input_labels(i);
        e.set_evaluator_input_label(i, b[i] ? l1 : l0);
    }
    EnginePair r;
    std::vector<GarbledTable> tables;
    for (uint32_t cyc = 0; cyc < cycles; cyc++) {
        tables.clear();
        r.garbler_stats.push_back(g.run_cycle(tables));
        r.evaluator_stats.push_back(e.run_cycle(tables));
        r.total_tables += tables.size();
    }
    auto states = g.output_states();
    auto shares = e.output_shares();
    for (size_t i = 0; i < states.size(); i++) {
        if (shares[i].is_public) {
            if (!states[i].is_public || states[i].bit != shares[i].bit)
                throw std::runtime_error("public output disagreement");
            r.outputs.push_back(shares[i].bit);
        } else {
            r.outputs.push_back(g.decode_output(i, shares[i].label));
        }
    }
    return r;
}

struct PairResult {
    SessionResult garbler;
    SessionResult evaluator;
    std::vector<uint8_t> garbler_sent;
    std::vector<uint8_t> evaluator_sent;
};

/// simulate_session plus both directions of the transcript.
inline PairResult run_recorded(const Circuit& c, const BitVec& a, const BitVec& b,
                               const BitVec& p, uint32_t cycles,
                               OutputPolicy policy, uint64_t seed) {
    auto [g_raw, e_raw] = make_memory_pipe();
    RecordingChannel g_ch(*g_raw), e_ch(*e_raw);
    PairResult r;
    std::exception_ptr g_err;
    std::thread garbler([&] {
        try {
            DealerOt ot(true);
            r.garbler = run_garbler_session(c, a, p, cycles, g_ch, ot, policy, seed);
        } catch (...) {
            g_err = std::current_exception();
            g_ch.close();
        }
    });
    DealerOt ot(true);
    try {
        r.evaluator = run_evaluator_session(c, b, p, cycles, e_ch, ot, policy);
    } catch (...) {
        garbler.join();
        throw;
    }
    garbler.join();
    if (g_err) std::rethrow_exception(g_err);
    r.garbler_sent = g_ch.sent();
    r.evaluator_sent = e_ch.sent();
    return r;
}

/// Walks a raw transcript into frames (must be well-formed).
inline std::vector<Frame> split_frames(const std::vector<uint8_t>& bytes) {
    std::vector<Frame> out;
    size_t off = 0;
    while (off < bytes.size()) {
        if (off + 5 > bytes.size()) throw std::runtime_error("dangling frame header");
        uint32_t len = uint32_t(bytes[off + 1]) << 24 | uint32_t(bytes[off + 2]) << 16 |
                       uint32_t(bytes[off + 3]) << 8 | uint32_t(bytes[off + 4]);
        if (off + 5 + len > bytes.size()) throw std::runtime_error("truncated frame");
        Frame f;
        f.type = MsgType(bytes[off]);
        f.payload.assign(bytes.begin() + long(off) + 5,
                         bytes.begin() + long(off) + 5 + len);
        out.push_back(std::move(f));
        off += 5 + len;
    }
    return out;
}

}  // namespace sgc::test
