#include <algorithm>
#include <cctype>
#include <sstream>

#include "sgc/benchgen.hpp"

namespace sgc::bench {

namespace {

using Word = std::vector<WireId>;  // LSB-first

constexpr uint32_t kOpcodeCount = 11;

bool opcode_writes_reg(Opcode op) {
    switch (op) {
        case Opcode::Ldi:
        case Opcode::Mov:
        case Opcode::Add:
        case Opcode::Sub:
        case Opcode::And:
        case Opcode::Xor:
        case Opcode::Shr:
        case Opcode::Cmovnz:
        case Opcode::Ld:
            return true;
        default:
            return false;
    }
}

struct CpuWires {
    CircuitBuilder b{"tinycpu"};
    WireId zero = kNoWire;

    WireId and2(WireId x, WireId y) { return b.gate(GateKind::And, x, y); }
    WireId or2(WireId x, WireId y) { return b.gate(GateKind::Or, x, y); }
    WireId xor2(WireId x, WireId y) { return b.gate(GateKind::Xor, x, y); }

    WireId or_tree(const Word& xs) {
        Word cur = xs;
        while (cur.size() > 1) {
            Word next;
            for (size_t i = 0; i + 1 < cur.size(); i += 2)
                next.push_back(or2(cur[i], cur[i + 1]));
            if (cur.size() % 2 == 1) next.push_back(cur.back());
            cur = std::move(next);
        }
        return cur[0];
    }

    /// field == k over preallocated complements of the field bits.
    WireId match(const Word& field, const Word& nfield, uint32_t k) {
        Word lits;
        for (size_t i = 0; i < field.size(); i++)
            lits.push_back((k >> i) & 1 ? field[i] : nfield[i]);
        WireId acc = lits[0];
        for (size_t i = 1; i < lits.size(); i++) acc = and2(acc, lits[i]);
        return acc;
    }

    /// Selector tree over 2^sel.size() words (inputs padded by caller).
    Word select_tree(std::vector<Word> words, const Word& sel) {
        for (WireId s : sel) {
            std::vector<Word> next;
            for (size_t i = 0; i + 1 < words.size(); i += 2)
                next.push_back(mux_word(b, s, words[i], words[i + 1]));
            words = std::move(next);
        }
        return words[0];
    }
};

}  // namespace

TinyCpuCircuit gen_tinycpu(const TinyCpuProgram& prog) {
    if (prog.words.empty() || prog.words.size() > kCpuImemWords)
        throw std::invalid_argument("program must have 1.." +
                                    std::to_string(kCpuImemWords) + " words");
    for (uint16_t w : prog.words)
        if ((w >> 12) > uint16_t(Opcode::St))
            throw std::invalid_argument("bad opcode in program word");
    if ((prog.words.back() >> 12) != uint16_t(Opcode::Halt))
        throw std::invalid_argument("program must end with HALT");

    TinyCpuCircuit result;
    CpuWires cpu;
    CircuitBuilder& b = cpu.b;

    // state wires (flip-flop outputs), declared up front so combinational
    // logic can read them; the dff records come last
    std::vector<Word> imem(kCpuImemWords);
    for (auto& w : imem) w = b.wires(kCpuWordBits);
    Word pc = b.wires(4);
    WireId halted = b.wire();
    std::vector<Word> regs(kCpuRegs);
    for (auto& r : regs) r = b.wires(kCpuWordBits);
    std::vector<Word> mem(kCpuDataWords);
    for (auto& m : mem) m = b.wires(kCpuWordBits);

    // runtime constant 0 (engine resolves x^x publicly on both sides)
    cpu.zero = cpu.xor2(imem[0][0], imem[0][0]);

    // fetch
    Word instr = cpu.select_tree(imem, pc);

    // decode fields
    Word op(instr.begin() + 12, instr.end());
    Word rd_f(instr.begin() + 9, instr.begin() + 12);
    Word rs_f(instr.begin() + 6, instr.begin() + 9);
    Word low3(instr.begin(), instr.begin() + 3);
    Word imm8(instr.begin(), instr.begin() + 8);

    Word nop(4), nrd(3), nlow(3);
    for (int i = 0; i < 4; i++) nop[i] = b.not_gate(op[i]);
    for (int i = 0; i < 3; i++) nrd[i] = b.not_gate(rd_f[i]);
    for (int i = 0; i < 3; i++) nlow[i] = b.not_gate(low3[i]);

    Word is_op(kOpcodeCount);
    for (uint32_t k = 0; k < kOpcodeCount; k++)
        is_op[k] = cpu.match(op, nop, k);

    // control
    WireId halt_now = is_op[uint32_t(Opcode::Halt)];
    WireId halted_next = cpu.or2(halted, halt_now);
    WireId live = b.not_gate(halted);
    Word writers;
    for (uint32_t k = 0; k < kOpcodeCount; k++)
        if (opcode_writes_reg(Opcode(k))) writers.push_back(is_op[k]);
    WireId wen_reg = cpu.and2(cpu.or_tree(writers), live);
    WireId wen_mem = cpu.and2(is_op[uint32_t(Opcode::St)], live);

    // register file reads (linear-scan selector trees)
    Word rs_val = cpu.select_tree(regs, rs_f);
    Word rd_val = cpu.select_tree(regs, rd_f);
    Word rc_val = cpu.select_tree(regs, low3);

    // data memory read
    Word ld_val = cpu.select_tree(mem, low3);

    // ALU
    Word add_v = ripple_add(b, rd_val, rs_val, false);
    Word sub_v = ripple_sub(b, rd_val, rs_val);
    Word and_v, xor_v;
    for (uint32_t i = 0; i < kCpuWordBits; i++) {
        and_v.push_back(cpu.and2(rd_val[i], rs_val[i]));
        xor_v.push_back(cpu.xor2(rd_val[i], rs_val[i]));
    }
    Word shr_v(rd_val.begin() + 1, rd_val.end());
    shr_v.push_back(cpu.zero);
    Word ldi_v = imm8;
    ldi_v.resize(kCpuWordBits, cpu.zero);
    WireId nz = cpu.or_tree(rc_val);
    Word cmov_v = mux_word(b, nz, rd_val, rs_val);

    // write-back value: one-hot over the writing opcodes
    const std::pair<Opcode, const Word*> wb_sources[] = {
        {Opcode::Ldi, &ldi_v}, {Opcode::Mov, &rs_val}, {Opcode::Add, &add_v},
        {Opcode::Sub, &sub_v}, {Opcode::And, &and_v},  {Opcode::Xor, &xor_v},
        {Opcode::Shr, &shr_v}, {Opcode::Cmovnz, &cmov_v}, {Opcode::Ld, &ld_val}};
    Word wb;
    for (uint32_t i = 0; i < kCpuWordBits; i++) {
        Word terms;
        for (const auto& [opk, val] : wb_sources)
            terms.push_back(cpu.and2(is_op[uint32_t(opk)], (*val)[i]));
        wb.push_back(cpu.or_tree(terms));
    }

    // register writes
    for (uint32_t r = 0; r < kCpuRegs; r++) {
        WireId hit = cpu.match(rd_f, nrd, r);
        WireId sel = cpu.and2(wen_reg, hit);
        Word next = mux_word(b, sel, regs[r], wb);
        for (uint32_t i = 0; i < kCpuWordBits; i++)
            b.dff(regs[r][i], next[i], FlipFlopInit{FlipFlopInit::Kind::Const0, 0});
    }

    // data memory writes (stored value is the rd register)
    uint32_t g_index = 0, e_index = 0;
    for (uint32_t w = 0; w < kCpuDataWords; w++) {
        WireId hit = cpu.match(low3, nlow, w);
        WireId sel = cpu.and2(wen_mem, hit);
        Word next = mux_word(b, sel, mem[w], rd_val);
        const MemBind& bind = prog.mem[w];
        for (uint32_t i = 0; i < kCpuWordBits; i++) {
            FlipFlopInit init;
            switch (bind.kind) {
                case MemBind::Kind::Const:
                    init.kind = (bind.value >> i) & 1 ? FlipFlopInit::Kind::Const1
                                                      : FlipFlopInit::Kind::Const0;
                    break;
                case MemBind::Kind::Garbler:
                    init.kind = FlipFlopInit::Kind::Garbler;
                    init.index = g_index + i;
                    break;
                case MemBind::Kind::Evaluator:
                    init.kind = FlipFlopInit::Kind::Evaluator;
                    init.index = e_index + i;
                    break;
            }
            b.dff(mem[w][i], next[i], init);
        }
        if (bind.kind == MemBind::Kind::Garbler) g_index += kCpuWordBits;
        if (bind.kind == MemBind::Kind::Evaluator) e_index += kCpuWordBits;
    }

    // declare the private input space consumed by memory bindings
    b.declare_garbler_inputs(g_index);
    b.declare_evaluator_inputs(e_index);

    // program counter: +1 unless halting
    Word pc_inc;
    pc_inc.push_back(b.not_gate(pc[0]));
    WireId carry = pc[0];
    for (int i = 1; i < 4; i++) {
        pc_inc.push_back(cpu.xor2(pc[i], carry));
        if (i < 3) carry = cpu.and2(pc[i], carry);
    }
    Word pc_next = mux_word(b, halted_next, pc_inc, pc);
    for (int i = 0; i < 4; i++)
        b.dff(pc[i], pc_next[i], FlipFlopInit{FlipFlopInit::Kind::Const0, 0});
    b.dff(halted, halted_next, FlipFlopInit{FlipFlopInit::Kind::Const0, 0});

    // instruction memory: self-looping flip-flops seeded from the public
    // program bits
    for (uint32_t w = 0; w < kCpuImemWords; w++)
        for (uint32_t i = 0; i < kCpuWordBits; i++)
            b.dff(imem[w][i], imem[w][i],
                  FlipFlopInit{FlipFlopInit::Kind::Public, w * kCpuWordBits + i});
    b.declare_public_inputs(kCpuPublicBits);

    // the result lives in the last data word
    b.output_word(mem[kCpuDataWords - 1]);

    result.cycles = uint32_t(prog.words.size());
    result.pc_wires = pc;
    result.control_wires = instr;
    result.control_wires.insert(result.control_wires.end(), is_op.begin(), is_op.end());
    result.control_wires.push_back(halted);
    result.control_wires.push_back(halted_next);
    result.control_wires.push_back(wen_reg);
    result.control_wires.push_back(wen_mem);
    for (uint32_t r = 0; r < kCpuRegs; r++) result.reg_wires[r] = regs[r];
    for (uint32_t w = 0; w < kCpuDataWords; w++) result.mem_wires[w] = mem[w];
    result.circuit = b.build();
    return result;
}

BitVec tinycpu_public_bits(const TinyCpuProgram& prog) {
    BitVec p(kCpuPublicBits, 0);
    for (size_t w = 0; w < prog.words.size(); w++)
        for (uint32_t i = 0; i < kCpuWordBits; i++)
            p[w * kCpuWordBits + i] = (prog.words[w] >> i) & 1;
    return p;  // unused words stay 0x0000 = HALT
}

namespace {

BitVec bind_bits(const TinyCpuProgram& prog, MemBind::Kind kind,
                 const std::array<uint16_t, kCpuDataWords>& values) {
    BitVec v;
    for (uint32_t w = 0; w < kCpuDataWords; w++) {
        if (prog.mem[w].kind != kind) continue;
        for (uint32_t i = 0; i < kCpuWordBits; i++)
            v.push_back((values[w] >> i) & 1);
    }
    return v;
}

}  // namespace

BitVec tinycpu_garbler_bits(const TinyCpuProgram& prog,
                            const std::array<uint16_t, kCpuDataWords>& values) {
    return bind_bits(prog, MemBind::Kind::Garbler, values);
}
BitVec tinycpu_evaluator_bits(const TinyCpuProgram& prog,
                              const std::array<uint16_t, kCpuDataWords>& values) {
    return bind_bits(prog, MemBind::Kind::Evaluator, values);
}

// ---------------------------------------------------------------------------
// Assembler
// ---------------------------------------------------------------------------

namespace {

std::string upper(std::string s) {
    for (char& c : s) c = char(std::toupper(uint8_t(c)));
    return s;
}

struct AsmLine {
    std::vector<std::string> tokens;
    size_t line_no;

    const std::string& tok(size_t i, const char* what) const {
        if (i >= tokens.size())
            throw AsmError(line_no, std::string("expected ") + what);
        return tokens[i];
    }
    void done(size_t n) const {
        if (tokens.size() > n)
            throw AsmError(line_no, "trailing operand '" + tokens[n] + "'");
    }

    uint32_t reg(size_t i) const {
        std::string t = upper(tok(i, "register"));
        if (t.size() == 2 && t[0] == 'R' && t[1] >= '0' && t[1] <= '7')
            return uint32_t(t[1] - '0');
        throw AsmError(line_no, "expected register r0..r7, got '" + tokens[i] + "'");
    }
    uint32_t number(size_t i, uint32_t max, const char* what) const {
        const std::string& t = tok(i, what);
        try {
            size_t pos = 0;
            unsigned long v = std::stoul(t, &pos, 0);
            if (pos != t.size() || v > max) throw std::invalid_argument("");
            return uint32_t(v);
        } catch (...) {
            throw AsmError(line_no, std::string("bad ") + what + " '" + t + "'");
        }
    }
    uint32_t addr(size_t i) const {
        std::string t = tok(i, "memory address");
        if (t.size() >= 3 && t.front() == '[' && t.back() == ']') {
            AsmLine tmp{{t.substr(1, t.size() - 2)}, line_no};
            return tmp.number(0, kCpuDataWords - 1, "memory address");
        }
        throw AsmError(line_no, "expected [addr], got '" + t + "'");
    }
};

}  // namespace

TinyCpuProgram assemble(const std::string& source) {
    TinyCpuProgram prog;
    std::istringstream in(source);
    std::string raw;
    size_t line_no = 0;
    while (std::getline(in, raw)) {
        line_no++;
        for (char stop : {'#', ';'})
            if (auto pos = raw.find(stop); pos != std::string::npos)
                raw.erase(pos);
        for (char& ch : raw)
            if (ch == ',') ch = ' ';
        AsmLine line{{}, line_no};
        std::istringstream ls(raw);
        std::string t;
        while (ls >> t) line.tokens.push_back(t);
        if (line.tokens.empty()) continue;

        std::string mn = upper(line.tokens[0]);
        if (mn == ".MEM") {
            uint32_t a = line.number(1, kCpuDataWords - 1, "memory address");
            std::string what = upper(line.tok(2, "binding"));
            if (what == "G") {
                prog.mem[a] = {MemBind::Kind::Garbler, 0};
            } else if (what == "E") {
                prog.mem[a] = {MemBind::Kind::Evaluator, 0};
            } else {
                prog.mem[a] = {MemBind::Kind::Const,
                               uint16_t(line.number(2, 0xffff, "constant"))};
            }
            line.done(3);
            continue;
        }

        if (prog.words.size() >= kCpuImemWords)
            throw AsmError(line_no, "program exceeds " +
                                        std::to_string(kCpuImemWords) + " words");
        uint16_t word = 0;
        if (mn == "HALT") {
            line.done(1);
        } else if (mn == "LDI") {
            word = uint16_t(uint16_t(Opcode::Ldi) << 12 | line.reg(1) << 9 |
                            line.number(2, 0xff, "immediate"));
            line.done(3);
        } else if (mn == "MOV" || mn == "ADD" || mn == "SUB" || mn == "AND" ||
                   mn == "XOR") {
            Opcode op = mn == "MOV"   ? Opcode::Mov
                        : mn == "ADD" ? Opcode::Add
                        : mn == "SUB" ? Opcode::Sub
                        : mn == "AND" ? Opcode::And
                                      : Opcode::Xor;
            word = uint16_t(uint16_t(op) << 12 | line.reg(1) << 9 | line.reg(2) << 6);
            line.done(3);
        } else if (mn == "SHR") {
            word = uint16_t(uint16_t(Opcode::Shr) << 12 | line.reg(1) << 9);
            line.done(2);
        } else if (mn == "CMOVNZ") {
            word = uint16_t(uint16_t(Opcode::Cmovnz) << 12 | line.reg(1) << 9 |
                            line.reg(2) << 6 | line.reg(3));
            line.done(4);
        } else if (mn == "LD") {
            word = uint16_t(uint16_t(Opcode::Ld) << 12 | line.reg(1) << 9 |
                            line.addr(2));
            line.done(3);
        } else if (mn == "ST") {
            word = uint16_t(uint16_t(Opcode::St) << 12 | line.reg(2) << 9 |
                            line.addr(1));
            line.done(3);
        } else {
            throw AsmError(line_no, "unknown mnemonic '" + line.tokens[0] + "'");
        }
        prog.words.push_back(word);
    }
    if (prog.words.empty() || (prog.words.back() >> 12) != uint16_t(Opcode::Halt))
        throw AsmError(line_no, "program must end with HALT");
    return prog;
}

std::string disassemble(const TinyCpuProgram& prog) {
    std::ostringstream out;
    for (uint32_t w = 0; w < kCpuDataWords; w++) {
        const MemBind& m = prog.mem[w];
        if (m.kind == MemBind::Kind::Garbler)
            out << ".mem " << w << " g\n";
        else if (m.kind == MemBind::Kind::Evaluator)
            out << ".mem " << w << " e\n";
        else if (m.value != 0)
            out << ".mem " << w << " " << m.value << "\n";
    }
    for (uint16_t word : prog.words) {
        uint32_t op = word >> 12, rd = (word >> 9) & 7, rs = (word >> 6) & 7;
        uint32_t low3 = word & 7, imm8 = word & 0xff;
        switch (Opcode(op)) {
            case Opcode::Halt: out << "HALT\n"; break;
            case Opcode::Ldi: out << "LDI r" << rd << ", " << imm8 << "\n"; break;
            case Opcode::Mov: out << "MOV r" << rd << ", r" << rs << "\n"; break;
            case Opcode::Add: out << "ADD r" << rd << ", r" << rs << "\n"; break;
            case Opcode::Sub: out << "SUB r" << rd << ", r" << rs << "\n"; break;
            case Opcode::And: out << "AND r" << rd << ", r" << rs << "\n"; break;
            case Opcode::Xor: out << "XOR r" << rd << ", r" << rs << "\n"; break;
            case Opcode::Shr: out << "SHR r" << rd << "\n"; break;
            case Opcode::Cmovnz:
                out << "CMOVNZ r" << rd << ", r" << rs << ", r" << low3 << "\n";
                break;
            case Opcode::Ld: out << "LD r" << rd << ", [" << low3 << "]\n"; break;
            case Opcode::St: out << "ST [" << low3 << "], r" << rd << "\n"; break;
            default: out << "HALT\n"; break;
        }
    }
    return out.str();
}

}  // namespace sgc::bench
