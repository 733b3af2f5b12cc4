#include "sgc/benchgen.hpp"

namespace sgc::bench {

std::vector<WireId> ripple_add(CircuitBuilder& b, const std::vector<WireId>& x,
                               const std::vector<WireId>& y, bool keep_carry) {
    if (x.empty() || y.empty() || y.size() > x.size())
        throw std::invalid_argument("ripple_add: bad operand widths");
    std::vector<WireId> sum;
    sum.reserve(x.size() + 1);
    // bit 0: half adder
    sum.push_back(b.gate(GateKind::Xor, x[0], y[0]));
    WireId carry = b.gate(GateKind::And, x[0], y[0]);
    for (size_t i = 1; i < x.size(); i++) {
        const bool last = i + 1 == x.size();
        if (i < y.size()) {
            // s = x^y^c, c' = c ^ ((x^c)&(y^c))
            WireId t1 = b.gate(GateKind::Xor, x[i], carry);
            WireId t2 = b.gate(GateKind::Xor, y[i], carry);
            sum.push_back(b.gate(GateKind::Xor, t1, y[i]));
            WireId u = b.gate(GateKind::And, t1, t2);
            // A discarded top carry leaves u driving nothing; the engine's
            // fanout analysis skips it.
            if (!last || keep_carry) carry = b.gate(GateKind::Xor, u, carry);
        } else {
            // incrementer tail past y's width
            WireId s = b.gate(GateKind::Xor, x[i], carry);
            if (!last || keep_carry) carry = b.gate(GateKind::And, x[i], carry);
            sum.push_back(s);
        }
    }
    if (keep_carry) sum.push_back(carry);
    return sum;
}

std::vector<WireId> ripple_sub(CircuitBuilder& b, const std::vector<WireId>& x,
                               const std::vector<WireId>& y) {
    if (x.empty() || x.size() != y.size())
        throw std::invalid_argument("ripple_sub: bad operand widths");
    // x + ~y + 1
    std::vector<WireId> diff;
    diff.reserve(x.size());
    diff.push_back(b.gate(GateKind::Xor, x[0], y[0]));
    WireId carry = kNoWire;
    if (x.size() > 1) {
        WireId nx0 = b.not_gate(x[0]);
        carry = b.gate(GateKind::Nand, nx0, y[0]);  // maj(x, ~y, 1)
    }
    for (size_t i = 1; i < x.size(); i++) {
        const bool last = i + 1 == x.size();
        WireId ny = b.not_gate(y[i]);
        WireId t1 = b.gate(GateKind::Xor, x[i], carry);
        diff.push_back(b.gate(GateKind::Xor, t1, ny));
        if (!last) {
            WireId t2 = b.gate(GateKind::Xor, ny, carry);
            WireId u = b.gate(GateKind::And, t1, t2);
            carry = b.gate(GateKind::Xor, u, carry);
        }
    }
    return diff;
}

std::vector<WireId> mux_word(CircuitBuilder& b, WireId sel,
                             const std::vector<WireId>& d0,
                             const std::vector<WireId>& d1) {
    if (d0.size() != d1.size())
        throw std::invalid_argument("mux_word: width mismatch");
    WireId nsel = b.not_gate(sel);
    std::vector<WireId> out;
    out.reserve(d0.size());
    for (size_t i = 0; i < d0.size(); i++) {
        WireId lo = b.gate(GateKind::And, d0[i], nsel);
        WireId hi = b.gate(GateKind::And, d1[i], sel);
        out.push_back(b.gate(GateKind::Or, lo, hi));
    }
    return out;
}

Circuit gen_adder(uint32_t bits) {
    if (bits < 1) throw std::invalid_argument("adder width must be >= 1");
    CircuitBuilder b("adder" + std::to_string(bits));
    auto a = b.garbler_inputs(bits);
    auto y = b.evaluator_inputs(bits);
    auto sum = ripple_add(b, a, y, /*keep_carry=*/false);
    b.output_word(sum);
    return b.build();
}

Circuit gen_comparator(uint32_t bits) {
    if (bits < 1) throw std::invalid_argument("comparator width must be >= 1");
    CircuitBuilder b("gt" + std::to_string(bits));
    auto a = b.garbler_inputs(bits);
    auto y = b.evaluator_inputs(bits);
    // gt := a_i if a_i != b_i else gt, from the low bit up
    WireId x0 = b.gate(GateKind::Xor, a[0], y[0]);
    WireId gt = b.gate(GateKind::And, x0, a[0]);
    for (uint32_t i = 1; i < bits; i++) {
        WireId x = b.gate(GateKind::Xor, a[i], y[i]);
        WireId t = b.gate(GateKind::Xor, a[i], gt);
        WireId u = b.gate(GateKind::And, x, t);
        gt = b.gate(GateKind::Xor, u, gt);
    }
    b.output(gt);
    return b.build();
}

Circuit gen_hamming(uint32_t bits) {
    if (bits < 1) throw std::invalid_argument("hamming width must be >= 1");
    CircuitBuilder b("hamming" + std::to_string(bits));
    auto a = b.garbler_inputs(bits);
    auto y = b.evaluator_inputs(bits);
    std::vector<std::vector<WireId>> counts;
    counts.reserve(bits);
    for (uint32_t i = 0; i < bits; i++)
        counts.push_back({b.gate(GateKind::Xor, a[i], y[i])});
    // tree of widening adders
    while (counts.size() > 1) {
        std::vector<std::vector<WireId>> next;
        next.reserve((counts.size() + 1) / 2);
        for (size_t i = 0; i + 1 < counts.size(); i += 2) {
            auto& u = counts[i];
            auto& v = counts[i + 1];
            next.push_back(u.size() >= v.size() ? ripple_add(b, u, v, true)
                                                : ripple_add(b, v, u, true));
        }
        if (counts.size() % 2 == 1) next.push_back(counts.back());
        counts = std::move(next);
    }
    b.output_word(counts[0]);
    return b.build();
}

Circuit gen_mult(uint32_t bits) {
    if (bits < 1) throw std::invalid_argument("mult width must be >= 1");
    CircuitBuilder b("mult" + std::to_string(bits));
    auto a = b.garbler_inputs(bits);
    auto y = b.evaluator_inputs(bits);
    // schoolbook rows, truncated to n bits
    std::vector<WireId> acc;
    for (uint32_t i = 0; i < bits; i++)
        acc.push_back(b.gate(GateKind::And, a[i], y[0]));
    for (uint32_t j = 1; j < bits; j++) {
        std::vector<WireId> row;
        for (uint32_t i = 0; i + j < bits; i++)
            row.push_back(b.gate(GateKind::And, a[i], y[j]));
        std::vector<WireId> high(acc.begin() + j, acc.end());
        auto summed = ripple_add(b, high, row, /*keep_carry=*/false);
        std::copy(summed.begin(), summed.end(), acc.begin() + j);
    }
    b.output_word(acc);
    return b.build();
}

Circuit gen_mux_tree(uint32_t width, uint32_t ways) {
    if (width < 1 || ways < 1) throw std::invalid_argument("mux tree params must be >= 1");
    CircuitBuilder b("mux" + std::to_string(ways) + "x" + std::to_string(width));
    std::vector<std::vector<WireId>> words;
    for (uint32_t i = 0; i < ways; i++)
        words.push_back(i % 2 == 0 ? b.garbler_inputs(width)
                                   : b.evaluator_inputs(width));
    uint32_t sel_bits = 0;
    while ((1u << sel_bits) < ways) sel_bits++;
    auto sel = b.public_inputs(sel_bits);
    while (words.size() < (1u << sel_bits)) words.push_back(words.back());
    for (uint32_t level = 0; level < sel_bits; level++) {
        std::vector<std::vector<WireId>> next;
        for (size_t i = 0; i + 1 < words.size(); i += 2)
            next.push_back(mux_word(b, sel[level], words[i], words[i + 1]));
        words = std::move(next);
    }
    b.output_word(words[0]);
    return b.build();
}

Circuit make_public_inputs_secret(const Circuit& c) {
    Circuit out = c;
    const uint32_t base = out.garbler_input_count;
    for (auto& bind : out.bindings) {
        if (bind.cls == InputClass::Public) {
            bind.cls = InputClass::Garbler;
            bind.index += base;
        }
    }
    for (auto& ff : out.dffs) {
        if (ff.init.kind == FlipFlopInit::Kind::Public) {
            ff.init.kind = FlipFlopInit::Kind::Garbler;
            ff.init.index += base;
        }
    }
    out.garbler_input_count += out.public_input_count;
    out.public_input_count = 0;
    out.name += "_psecret";
    return out;
}

}  // namespace sgc::bench
