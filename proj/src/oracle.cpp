#include "sgc/oracle.hpp"

#include <thread>

#include "sgc/protocol.hpp"

namespace sgc {

PlainTrace plain_eval(const Circuit& c, const BitVec& a, const BitVec& b,
                      const BitVec& p, uint32_t cycles) {
    if (a.size() != c.garbler_input_count || b.size() != c.evaluator_input_count ||
        p.size() != c.public_input_count)
        throw std::invalid_argument("input vector length mismatch");
    auto rep = validate(c);
    if (!rep.ok())
        throw std::invalid_argument("invalid circuit: " + rep.to_string());

    PlainTrace trace;
    std::vector<uint8_t> values(c.wire_count, 0);
    std::vector<uint8_t> ff_state(c.dffs.size(), 0);

    // initial flip-flop contents
    for (size_t i = 0; i < c.dffs.size(); i++) {
        const auto& init = c.dffs[i].init;
        switch (init.kind) {
            case FlipFlopInit::Kind::Const0: ff_state[i] = 0; break;
            case FlipFlopInit::Kind::Const1: ff_state[i] = 1; break;
            case FlipFlopInit::Kind::Garbler: ff_state[i] = a[init.index]; break;
            case FlipFlopInit::Kind::Evaluator: ff_state[i] = b[init.index]; break;
            case FlipFlopInit::Kind::Public: ff_state[i] = p[init.index]; break;
        }
    }

    for (uint32_t cyc = 0; cyc < cycles; cyc++) {
        for (const auto& bind : c.bindings) {
            switch (bind.cls) {
                case InputClass::Garbler: values[bind.wire] = a[bind.index]; break;
                case InputClass::Evaluator: values[bind.wire] = b[bind.index]; break;
                case InputClass::Public: values[bind.wire] = p[bind.index]; break;
            }
        }
        for (size_t i = 0; i < c.dffs.size(); i++)
            values[c.dffs[i].out] = ff_state[i];
        for (const auto& g : c.gates) {
            bool x = values[g.in0] != 0;
            bool y = g.is_unary() ? false : values[g.in1] != 0;
            values[g.out] = eval_gate(g.kind, x, y) ? 1 : 0;
        }
        trace.wire_values.push_back(values);
        for (size_t i = 0; i < c.dffs.size(); i++)
            ff_state[i] = values[c.dffs[i].in];
    }

    trace.outputs.reserve(c.outputs.size());
    for (WireId w : c.outputs) trace.outputs.push_back(values[w]);
    return trace;
}

EquivVerdict exhaustive_equiv(const Circuit& c, uint32_t cycles,
                              uint32_t max_private_bits,
                              std::vector<BitVec> public_assignments) {
    EquivVerdict verdict;
    const uint32_t na = c.garbler_input_count;
    const uint32_t nb = c.evaluator_input_count;
    if (na + nb > max_private_bits) {
        verdict.refused = true;
        verdict.refusal_reason =
            std::to_string(na + nb) + " private input bits exceed limit " +
            std::to_string(max_private_bits);
        return verdict;
    }
    if (public_assignments.empty())
        public_assignments.push_back(BitVec(c.public_input_count, 0));

    const uint64_t n_cases = uint64_t(1) << (na + nb);
    for (const BitVec& p : public_assignments) {
        if (p.size() != c.public_input_count)
            throw std::invalid_argument("public assignment length mismatch");

        std::vector<BitVec> decoded_g(n_cases), decoded_e(n_cases);
        auto [g_ch, e_ch] = make_memory_pipe();
        std::exception_ptr g_err, e_err;

        // One persistent thread per role; each loop iteration is a full
        // protocol session over the shared pipe.
        std::thread garbler([&] {
            try {
                DealerOt ot(true);
                for (uint64_t idx = 0; idx < n_cases; idx++) {
                    BitVec a = bits_from_u64(idx & ((uint64_t(1) << na) - 1), na);
                    auto r = run_garbler_session(c, a, p, cycles, *g_ch, ot,
                                                 OutputPolicy::Both, idx);
                    decoded_g[idx] = r.outputs;
                }
            } catch (...) {
                g_err = std::current_exception();
                g_ch->close();
            }
        });
        try {
            DealerOt ot(true);
            for (uint64_t idx = 0; idx < n_cases; idx++) {
                BitVec b = bits_from_u64(idx >> na, nb);
                auto r = run_evaluator_session(c, b, p, cycles, *e_ch, ot,
                                               OutputPolicy::Both);
                decoded_e[idx] = r.outputs;
            }
        } catch (...) {
            e_err = std::current_exception();
            e_ch->close();
        }
        garbler.join();
        if (g_err) std::rethrow_exception(g_err);
        if (e_err) std::rethrow_exception(e_err);

        for (uint64_t idx = 0; idx < n_cases; idx++) {
            BitVec a = bits_from_u64(idx & ((uint64_t(1) << na) - 1), na);
            BitVec b = bits_from_u64(idx >> na, nb);
            BitVec expected = plain_eval(c, a, b, p, cycles).outputs;
            verdict.cases_run++;
            if (decoded_g[idx] != expected || decoded_e[idx] != expected) {
                EquivMismatch m;
                m.case_index = idx;
                m.a = a;
                m.b = b;
                m.p = p;
                m.expected = expected;
                m.got = decoded_g[idx] != expected ? decoded_g[idx] : decoded_e[idx];
                verdict.mismatches.push_back(std::move(m));
                if (verdict.mismatches.size() >= 16) return verdict;
            }
        }
    }
    return verdict;
}

}  // namespace sgc
