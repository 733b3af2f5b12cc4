#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "common.hpp"
#include "sgc/benchgen.hpp"

using namespace sgc;
using bench::assemble;
using bench::disassemble;
using test::run_engine_pair;

namespace {

uint64_t all_secret_tables(const Circuit& c, uint64_t a, uint64_t b) {
    auto r = run_engine_pair(c, bits_from_u64(a, c.garbler_input_count),
                             bits_from_u64(b, c.evaluator_input_count),
                             BitVec(c.public_input_count, 0), 1);
    return r.total_tables;
}

}  // namespace

TEST_CASE("adder table counts: n-1 alive, final carry dead") {
    CHECK(all_secret_tables(bench::gen_adder(1), 1, 1) == 0);
    CHECK(all_secret_tables(bench::gen_adder(8), 170, 85) == 7);

    auto c = bench::gen_adder(32);
    auto r = run_engine_pair(c, bits_from_u64(0x12345678, 32),
                             bits_from_u64(0x9abcdef0, 32), {}, 1);
    CHECK(r.total_tables == 31);
    // the stream is consumed exactly: no placeholders, nothing filtered,
    // only the discarded top carry skipped
    CHECK(r.evaluator_stats[0].tables_emitted == 31);
    CHECK(r.evaluator_stats[0].tables_filtered == 0);
    CHECK(r.garbler_stats[0].tables_filtered == 0);
    CHECK(r.garbler_stats[0].skipped == 1);
}

TEST_CASE("adder arithmetic through the garbled path") {
    auto c = bench::gen_adder(8);
    auto r = run_engine_pair(c, bits_from_u64(200, 8), bits_from_u64(100, 8), {}, 1);
    CHECK(bits_to_u64(r.outputs) == 44);
}

TEST_CASE("comparator table counts and semantics") {
    CHECK(all_secret_tables(bench::gen_comparator(1), 1, 0) == 1);
    CHECK(all_secret_tables(bench::gen_comparator(8), 3, 250) == 8);
    CHECK(all_secret_tables(bench::gen_comparator(32), 7, 7) == 32);

    auto c = bench::gen_comparator(8);
    auto eq = run_engine_pair(c, bits_from_u64(99, 8), bits_from_u64(99, 8), {}, 1);
    CHECK(eq.outputs == BitVec{0});  // strict greater-than
    auto gt = run_engine_pair(c, bits_from_u64(100, 8), bits_from_u64(99, 8), {}, 1);
    CHECK(gt.outputs == BitVec{1});
    auto lt = run_engine_pair(c, bits_from_u64(98, 8), bits_from_u64(99, 8), {}, 1);
    CHECK(lt.outputs == BitVec{0});
}

TEST_CASE("comparator-4: exhaustive against the reference evaluator") {
    auto v = exhaustive_equiv(bench::gen_comparator(4), 1);
    CHECK(v.cases_run == 256);
    CHECK(v.mismatches.empty());
}

TEST_CASE("hamming-32 garbles under the reference budget") {
    auto c = bench::gen_hamming(32);
    uint64_t tables = all_secret_tables(c, 0xdeadbeef, 0x01234567);
    CHECK(tables <= 160);
    // tree-of-adders construction lands on 57 for width 32
    CHECK(tables == 57);
    auto r = run_engine_pair(c, bits_from_u64(0xff00ff00, 32),
                             bits_from_u64(0x00ff0000, 32), {}, 1);
    CHECK(bits_to_u64(r.outputs) == 24);
}

TEST_CASE("mult-4: exhaustive against the reference evaluator") {
    auto v = exhaustive_equiv(bench::gen_mult(4), 1);
    CHECK(v.cases_run == 256);
    CHECK(v.mismatches.empty());
}

TEST_CASE("mult-32 table count is reported (schoolbook, truncated)") {
    auto c = bench::gen_mult(32);
    uint64_t tables = all_secret_tables(c, 0x01010101, 0x10101010);
    // 528 partial products + 465 live adder cells
    CHECK(tables == 993);
}

TEST_CASE("mux tree with public select costs nothing") {
    auto c = bench::gen_mux_tree(1, 2);
    for (int s = 0; s < 2; s++) {
        auto r = run_engine_pair(c, {1}, {0}, {uint8_t(s)}, 1);
        CHECK(r.total_tables == 0);
        CHECK(r.outputs == BitVec{uint8_t(s == 0 ? 1 : 0)});
    }
    auto wide = bench::gen_mux_tree(4, 5);
    std::mt19937_64 rng(3);
    for (uint64_t s = 0; s < 8; s++) {
        BitVec a = test::random_bits(rng, wide.garbler_input_count);
        BitVec b = test::random_bits(rng, wide.evaluator_input_count);
        BitVec p = bits_from_u64(s, 3);
        auto r = run_engine_pair(wide, a, b, p, 1);
        CHECK(r.total_tables == 0);
        CHECK(r.outputs == plain_eval(wide, a, b, p, 1).outputs);
    }
}

TEST_CASE("assembler encodings") {
    CHECK(assemble("HALT\n").words == std::vector<uint16_t>{0x0000});
    auto p = assemble("LDI r3, 42\nHALT\n");
    CHECK(p.words[0] == uint16_t(0x1 << 12 | 3 << 9 | 42));
    auto q = assemble("CMOVNZ r1, r2, r3\nHALT\n");
    CHECK(q.words[0] == uint16_t(0x8 << 12 | 1 << 9 | 2 << 6 | 3));
    auto r = assemble("ST [5], r4\nHALT\n");
    CHECK(r.words[0] == uint16_t(0xA << 12 | 4 << 9 | 5));
    auto s = assemble(".mem 2 e\n.mem 1 g\nLD r7, [2]\nHALT\n");
    CHECK(s.words[0] == uint16_t(0x9 << 12 | 7 << 9 | 2));
    CHECK(s.mem[1].kind == bench::MemBind::Kind::Garbler);
    CHECK(s.mem[2].kind == bench::MemBind::Kind::Evaluator);
}

TEST_CASE("assembler rejections") {
    CHECK_THROWS_AS(assemble("FROB r1\nHALT\n"), bench::AsmError);
    CHECK_THROWS_AS(assemble("LDI r9, 1\nHALT\n"), bench::AsmError);
    CHECK_THROWS_AS(assemble("LDI r1, 300\nHALT\n"), bench::AsmError);
    CHECK_THROWS_AS(assemble("LD r1, [8]\nHALT\n"), bench::AsmError);
    CHECK_THROWS_AS(assemble("MOV r1, r2\n"), bench::AsmError);  // missing HALT
    CHECK_THROWS_AS(assemble(""), bench::AsmError);
    std::string too_long;
    for (int i = 0; i < 17; i++) too_long += "MOV r1, r2\n";
    too_long += "HALT\n";
    CHECK_THROWS_AS(assemble(too_long), bench::AsmError);
}

TEST_CASE("disassemble(assemble(s)) reproduces a canonical program") {
    const std::string canon =
        ".mem 0 g\n"
        ".mem 1 e\n"
        ".mem 2 513\n"
        "LD r0, [0]\n"
        "LD r1, [1]\n"
        "LD r2, [2]\n"
        "LDI r3, 255\n"
        "MOV r4, r0\n"
        "ADD r4, r1\n"
        "SUB r4, r2\n"
        "AND r3, r4\n"
        "XOR r3, r0\n"
        "SHR r3\n"
        "CMOVNZ r5, r3, r1\n"
        "MOV r6, r5\n"
        "ADD r6, r6\n"
        "ST [6], r6\n"
        "ST [7], r5\n"
        "HALT\n";
    auto prog = assemble(canon);
    CHECK(disassemble(prog) == canon);
    auto again = assemble(disassemble(prog));
    CHECK(again.words == prog.words);
}

TEST_CASE("tiny-cpu: ADD program costs one 16-bit adder") {
    auto prog = assemble(
        ".mem 0 g\n"
        ".mem 1 e\n"
        "LD r0, [0]\n"
        "LD r1, [1]\n"
        "ADD r0, r1\n"
        "ST [7], r0\n"
        "HALT\n");
    auto cpu = bench::gen_tinycpu(prog);
    auto p = bench::tinycpu_public_bits(prog);
    auto a = bench::tinycpu_garbler_bits(prog, {0x1234});
    auto b = bench::tinycpu_evaluator_bits(prog, {0, 0x0321});
    auto r = run_engine_pair(cpu.circuit, a, b, p, cpu.cycles);
    CHECK(bits_to_u64(r.outputs) == 0x1555);
    CHECK(r.total_tables == 15);  // one live 16-bit ripple add
}

TEST_CASE("tiny-cpu: halt latch freezes state past the program end") {
    auto prog = assemble(
        ".mem 0 g\n.mem 1 e\n"
        "LD r0, [0]\nLD r1, [1]\nADD r0, r1\nST [7], r0\nHALT\n");
    auto cpu = bench::gen_tinycpu(prog);
    auto p = bench::tinycpu_public_bits(prog);
    auto a = bench::tinycpu_garbler_bits(prog, {41});
    auto b = bench::tinycpu_evaluator_bits(prog, {0, 1});
    // run three cycles beyond the program; result must hold steady and the
    // halted cycles must garble nothing new
    auto r = run_engine_pair(cpu.circuit, a, b, p, cpu.cycles + 3);
    CHECK(bits_to_u64(r.outputs) == 42);
    CHECK(r.outputs == plain_eval(cpu.circuit, a, b, p, cpu.cycles + 3).outputs);
    CHECK(r.total_tables == 15);
    for (uint32_t cyc = cpu.cycles; cyc < cpu.cycles + 3; cyc++)
        CHECK(r.garbler_stats[cyc].tables_emitted == 0);
}

TEST_CASE("tiny-cpu: HALT-only program garbles nothing") {
    auto prog = assemble(".mem 0 g\n.mem 1 e\nHALT\n");
    auto cpu = bench::gen_tinycpu(prog);
    auto r = run_engine_pair(cpu.circuit, bench::tinycpu_garbler_bits(prog, {7}),
                             bench::tinycpu_evaluator_bits(prog, {0, 9}),
                             bench::tinycpu_public_bits(prog), cpu.cycles);
    CHECK(r.total_tables == 0);
}

TEST_CASE("tiny-cpu: program counter and control stay public every cycle") {
    auto prog = assemble(
        ".mem 0 g\n"
        ".mem 1 e\n"
        "LD r0, [0]\n"
        "LD r1, [1]\n"
        "XOR r0, r1\n"
        "CMOVNZ r2, r0, r1\n"
        "ST [7], r2\n"
        "HALT\n");
    auto cpu = bench::gen_tinycpu(prog);
    GarblerEngine g(cpu.circuit, 11);
    g.bind_public(bench::tinycpu_public_bits(prog));
    EvaluatorEngine e(cpu.circuit);
    e.bind_public(bench::tinycpu_public_bits(prog));
    auto a = bench::tinycpu_garbler_bits(prog, {0x8001});
    auto b = bench::tinycpu_evaluator_bits(prog, {0, 0x7ffe});
    for (uint32_t i = 0; i < cpu.circuit.garbler_input_count; i++)
        e.set_garbler_input_label(i, g.garbler_input_label(i, a[i] != 0));
    for (uint32_t i = 0; i < cpu.circuit.evaluator_input_count; i++) {
        auto [l0, l1] = g.evaluator_input_labels(i);
        e.set_evaluator_input_label(i, b[i] ? l1 : l0);
    }
    std::vector<GarbledTable> tables;
    for (uint32_t cyc = 0; cyc < cpu.cycles; cyc++) {
        tables.clear();
        g.run_cycle(tables);
        e.run_cycle(tables);
        for (WireId w : cpu.pc_wires) {
            CHECK(g.wire_is_public(w));
            CHECK(e.wire_is_public(w));
        }
        for (WireId w : cpu.control_wires) CHECK(g.wire_is_public(w));
    }
}

TEST_CASE("tiny-cpu: random programs agree with the reference evaluator") {
    const char* sources[] = {
        ".mem 0 g\n.mem 1 e\nLD r0, [0]\nLD r1, [1]\nSUB r0, r1\nST [7], r0\nHALT\n",
        ".mem 0 g\n.mem 1 e\nLD r0, [0]\nLD r1, [1]\nAND r0, r1\nSHR r0\nST [7], r0\nHALT\n",
        ".mem 0 g\n.mem 1 e\n.mem 2 g\nLD r0, [0]\nLD r1, [1]\nLD r2, [2]\n"
        "CMOVNZ r0, r1, r2\nST [7], r0\nHALT\n",
    };
    std::mt19937_64 rng(21);
    for (const char* src : sources) {
        auto prog = assemble(src);
        auto cpu = bench::gen_tinycpu(prog);
        auto p = bench::tinycpu_public_bits(prog);
        for (int trial = 0; trial < 20; trial++) {
            std::array<uint16_t, bench::kCpuDataWords> ga{}, ev{};
            for (auto& w : ga) w = uint16_t(rng());
            for (auto& w : ev) w = uint16_t(rng());
            auto a = bench::tinycpu_garbler_bits(prog, ga);
            auto b = bench::tinycpu_evaluator_bits(prog, ev);
            auto r = run_engine_pair(cpu.circuit, a, b, p, cpu.cycles, rng());
            CHECK(r.outputs == plain_eval(cpu.circuit, a, b, p, cpu.cycles).outputs);
        }
    }
}

TEST_CASE("generator parameter validation") {
    CHECK_THROWS_AS(bench::gen_adder(0), std::invalid_argument);
    CHECK_THROWS_AS(bench::gen_comparator(0), std::invalid_argument);
    CHECK_THROWS_AS(bench::gen_mux_tree(0, 2), std::invalid_argument);
    bench::TinyCpuProgram bad;
    bad.words = {uint16_t(0xF000)};
    CHECK_THROWS_AS(bench::gen_tinycpu(bad), std::invalid_argument);
    bench::TinyCpuProgram no_halt;
    no_halt.words = {uint16_t(0x3000)};
    CHECK_THROWS_AS(bench::gen_tinycpu(no_halt), std::invalid_argument);
}
