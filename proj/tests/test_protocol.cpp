#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <thread>

#include "common.hpp"
#include "sgc/sha256.hpp"

using namespace sgc;

namespace {

void put_u32(std::vector<uint8_t>& v, uint32_t x) {
    v.push_back(uint8_t(x >> 24));
    v.push_back(uint8_t(x >> 16));
    v.push_back(uint8_t(x >> 8));
    v.push_back(uint8_t(x));
}

std::vector<uint8_t> hello_payload(const Circuit& c, uint32_t cycles,
                                   const BitVec& p) {
    std::vector<uint8_t> v{kProtocolVersion};
    auto d = circuit_digest(c);
    v.insert(v.end(), d.begin(), d.end());
    put_u32(v, cycles);
    put_u32(v, uint32_t(p.size()));
    auto packed = pack_bits(p);
    v.insert(v.end(), packed.begin(), packed.end());
    return v;
}

}  // namespace

TEST_CASE("frames round-trip byte-exactly") {
    auto [a, b] = make_memory_pipe();
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; i++) {
        std::vector<uint8_t> payload(rng() % 300);
        for (auto& x : payload) x = uint8_t(rng());
        send_frame(*a, MsgType::Tables, payload);
        Frame f = recv_frame(*b);
        CHECK(f.type == MsgType::Tables);
        CHECK(f.payload == payload);
    }
}

TEST_CASE("unknown frame type is rejected") {
    auto [a, b] = make_memory_pipe();
    uint8_t bad[5] = {0x55, 0, 0, 0, 0};
    a->write_all(bad, 5);
    CHECK_THROWS_AS(recv_frame(*b), ProtocolError);
}

TEST_CASE("memory pipe close unblocks reader with TransportError") {
    auto [a, b] = make_memory_pipe();
    std::thread closer([&] { a->close(); });
    uint8_t buf[4];
    CHECK_THROWS_AS(b->read_all(buf, 4), TransportError);
    closer.join();
}

TEST_CASE("handshake: cycle count mismatch aborts both sides") {
    auto c = bench::gen_adder(2);
    auto [g_ch, e_ch] = make_memory_pipe();
    std::exception_ptr g_err;
    std::thread garbler([&] {
        try {
            DealerOt ot(true);
            run_garbler_session(c, BitVec(2, 0), {}, 2, *g_ch, ot,
                                OutputPolicy::Both, 1);
        } catch (...) {
            g_err = std::current_exception();
        }
    });
    DealerOt ot(true);
    CHECK_THROWS_AS(
        run_evaluator_session(c, BitVec(2, 0), {}, 3, *e_ch, ot, OutputPolicy::Both),
        HandshakeError);
    garbler.join();
    REQUIRE(g_err);
    CHECK_THROWS_AS(std::rethrow_exception(g_err), HandshakeError);
}

TEST_CASE("handshake: digest mismatch aborts before any label is sent") {
    auto c1 = bench::gen_adder(2);
    auto c2 = bench::gen_comparator(2);
    auto [g_raw, e_raw] = make_memory_pipe();
    RecordingChannel g_ch(*g_raw), e_ch(*e_raw);
    std::exception_ptr g_err;
    std::thread garbler([&] {
        try {
            DealerOt ot(true);
            run_garbler_session(c1, BitVec(2, 0), {}, 1, g_ch, ot,
                                OutputPolicy::Both, 1);
        } catch (...) {
            g_err = std::current_exception();
        }
    });
    DealerOt ot(true);
    CHECK_THROWS_AS(run_evaluator_session(c2, BitVec(2, 0), {}, 1, e_ch, ot,
                                          OutputPolicy::Both),
                    HandshakeError);
    garbler.join();
    REQUIRE(g_err);
    // only HELLO and ABORT ever crossed the wire
    for (const auto& f : test::split_frames(g_ch.sent()))
        CHECK((f.type == MsgType::Hello || f.type == MsgType::Abort));
}

TEST_CASE("handshake: differing public input vectors abort") {
    auto c = bench::gen_mux_tree(1, 2);
    auto [g_ch, e_ch] = make_memory_pipe();
    std::exception_ptr g_err;
    std::thread garbler([&] {
        try {
            DealerOt ot(true);
            run_garbler_session(c, {1}, {0}, 1, *g_ch, ot, OutputPolicy::Both, 1);
        } catch (...) {
            g_err = std::current_exception();
        }
    });
    DealerOt ot(true);
    CHECK_THROWS_AS(
        run_evaluator_session(c, {0}, {1}, 1, *e_ch, ot, OutputPolicy::Both),
        HandshakeError);
    garbler.join();
    REQUIRE(g_err);
}

TEST_CASE("framing arithmetic on a real adder-32 session") {
    auto c = bench::gen_adder(32);
    std::mt19937_64 rng(9);
    BitVec a = test::random_bits(rng, 32), b = test::random_bits(rng, 32);
    auto r = test::run_recorded(c, a, b, {}, 1, OutputPolicy::Both, 7);
    auto frames = test::split_frames(r.garbler_sent);
    REQUIRE(frames.size() == 5);  // hello, labels, ot labels, tables, plaintext
    CHECK(frames[0].type == MsgType::Hello);
    CHECK(frames[1].type == MsgType::GarblerInputLabels);
    CHECK(frames[1].payload.size() == 32 * 16);
    CHECK(frames[2].type == MsgType::OtDealerLabels);
    CHECK(frames[2].payload.size() == 32 * 16);
    CHECK(frames[3].type == MsgType::Tables);
    CHECK(frames[3].payload.size() == 8 + 31 * GarbledTable::kWireSize);
    CHECK(frames[4].type == MsgType::OutputPlaintext);

    auto eframes = test::split_frames(r.evaluator_sent);
    REQUIRE(eframes.size() == 3);  // hello, choices, output labels
    CHECK(eframes[1].type == MsgType::OtDealerChoices);
    CHECK(eframes[1].payload.size() == 4);
    CHECK(eframes[2].type == MsgType::OutputLabels);
    CHECK(eframes[2].payload.size() == 32 * 17);
}

TEST_CASE("zero-input frames still flow for stream alignment") {
    // evaluator-only inputs: garbler label frame is empty but present
    bench::CircuitBuilder bb("eonly");
    auto e = bb.evaluator_inputs(3);
    for (WireId w : e) bb.output(w);
    auto c = bb.build();
    BitVec b{1, 0, 1};
    auto r = test::run_recorded(c, {}, b, {}, 1, OutputPolicy::Both, 3);
    auto frames = test::split_frames(r.garbler_sent);
    CHECK(frames[1].type == MsgType::GarblerInputLabels);
    CHECK(frames[1].payload.empty());
    CHECK(r.garbler.outputs == b);  // identity wiring decodes the OT labels

    // all-public circuit: OT frames carry zero labels
    bench::CircuitBuilder pb("ponly");
    auto p = pb.public_inputs(4);
    pb.output(pb.gate(GateKind::And, p[0], p[1]));
    pb.output(pb.gate(GateKind::Xor, p[2], p[3]));
    auto pc = pb.build();
    auto pr = test::run_recorded(pc, {}, {}, {1, 1, 0, 1}, 1, OutputPolicy::Both, 3);
    auto gf = test::split_frames(pr.garbler_sent);
    auto ef = test::split_frames(pr.evaluator_sent);
    CHECK(gf[2].payload.empty());  // OT labels
    CHECK(ef[1].payload.empty());  // OT choices
    CHECK(pr.garbler.total_tables == 0);
    CHECK(pr.garbler.outputs == BitVec{1, 1});
}

TEST_CASE("identity circuits: delivered labels decode to the inputs") {
    bench::CircuitBuilder bb("identity");
    auto a = bb.garbler_inputs(4);
    auto e = bb.evaluator_inputs(4);
    for (WireId w : a) bb.output(w);
    for (WireId w : e) bb.output(w);
    auto c = bb.build();
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; trial++) {
        BitVec av = test::random_bits(rng, 4), ev = test::random_bits(rng, 4);
        auto sim = simulate_session(c, av, ev, {}, 1, OutputPolicy::Both, rng());
        BitVec want = av;
        want.insert(want.end(), ev.begin(), ev.end());
        CHECK(sim.garbler.outputs == want);
        CHECK(sim.evaluator.outputs == want);
    }
}

TEST_CASE("dealer OT delivers exactly the chosen labels") {
    LabelRng rng(41);
    std::vector<std::pair<Label, Label>> pairs;
    for (int i = 0; i < 8; i++)
        pairs.emplace_back(rng.next_label(), rng.next_label());
    auto [s_ch, r_ch] = make_memory_pipe();
    for (BitVec choices : {BitVec(8, 0), BitVec{1, 0, 1, 1, 0, 0, 1, 0}}) {
        DealerOt sender(true), receiver(true);
        std::thread t([&] { sender.send(*s_ch, pairs); });
        auto got = receiver.receive(*r_ch, choices);
        t.join();
        REQUIRE(got.size() == 8);
        for (int i = 0; i < 8; i++)
            CHECK(got[i] == (choices[i] ? pairs[i].second : pairs[i].first));
    }
}

TEST_CASE("dealer OT refuses without the explicit opt-in") {
    DealerOt ot(false);
    auto [a, b] = make_memory_pipe();
    CHECK_THROWS_AS((void)ot.receive(*a, BitVec{1, 0}), OtPolicyError);
    std::vector<std::pair<Label, Label>> pairs(2);
    CHECK_THROWS_AS(ot.send(*b, pairs), OtPolicyError);
}

TEST_CASE("output policy garbler-only: evaluator sees only an ack") {
    auto c = bench::gen_adder(4);
    auto sim = simulate_session(c, bits_from_u64(5, 4), bits_from_u64(6, 4), {}, 1,
                                OutputPolicy::GarblerOnly, 2);
    CHECK(sim.garbler.have_outputs);
    CHECK(bits_to_u64(sim.garbler.outputs) == 11);
    CHECK_FALSE(sim.evaluator.have_outputs);
}

TEST_CASE("tcp loopback session agrees with in-process simulate") {
    auto c = bench::gen_adder(8);
    BitVec a = bits_from_u64(77, 8), b = bits_from_u64(141, 8);
    auto sim = simulate_session(c, a, b, {}, 1, OutputPolicy::Both, 5);

    std::mt19937_64 rng(std::random_device{}());
    for (int attempt = 0; attempt < 10; attempt++) {
        uint16_t port = uint16_t(20000 + rng() % 40000);
        SessionResult gres, eres;
        std::exception_ptr g_err, e_err;
        std::thread listener([&] {
            try {
                auto ch = tcp_listen_one("127.0.0.1", port);
                DealerOt ot(true);
                gres = run_garbler_session(c, a, {}, 1, *ch, ot,
                                           OutputPolicy::Both, 5);
            } catch (...) {
                g_err = std::current_exception();
            }
        });
        try {
            auto ch = tcp_connect("127.0.0.1", port);
            DealerOt ot(true);
            eres = run_evaluator_session(c, b, {}, 1, *ch, ot, OutputPolicy::Both);
        } catch (...) {
            e_err = std::current_exception();
        }
        listener.join();
        if (g_err && attempt + 1 < 10) continue;  // port clash, retry
        REQUIRE_FALSE(g_err);
        REQUIRE_FALSE(e_err);
        CHECK(gres.outputs == sim.garbler.outputs);
        CHECK(eres.outputs == sim.garbler.outputs);
        CHECK(bits_to_u64(gres.outputs) == (77 + 141) % 256);
        break;
    }
}

// --- fault injection against a real evaluator ------------------------------

namespace {

struct ScriptedGarbler {
    Circuit c;
    std::unique_ptr<ByteChannel> ch;
    GarblerEngine engine;

    ScriptedGarbler(Circuit circuit, std::unique_ptr<ByteChannel> channel,
                    uint64_t seed)
        : c(std::move(circuit)), ch(std::move(channel)), engine(c, seed) {
        engine.bind_public({});
    }

    void prelude(const BitVec& a, uint32_t cycles) {
        send_frame(*ch, MsgType::Hello, hello_payload(c, cycles, {}));
        (void)recv_frame(*ch);  // peer hello
        std::vector<uint8_t> labels;
        for (uint32_t i = 0; i < c.garbler_input_count; i++) {
            auto lb = engine.garbler_input_label(i, a[i] != 0).to_bytes();
            labels.insert(labels.end(), lb.begin(), lb.end());
        }
        send_frame(*ch, MsgType::GarblerInputLabels, labels);
        Frame choices = recv_frame(*ch);  // OT choices
        BitVec bits = unpack_bits(choices.payload, c.evaluator_input_count);
        std::vector<uint8_t> reply;
        for (uint32_t i = 0; i < c.evaluator_input_count; i++) {
            auto [l0, l1] = engine.evaluator_input_labels(i);
            auto lb = (bits[i] ? l1 : l0).to_bytes();
            reply.insert(reply.end(), lb.begin(), lb.end());
        }
        send_frame(*ch, MsgType::OtDealerLabels, reply);
    }

    std::vector<uint8_t> cycle_tables_payload(uint32_t echo_cycle) {
        std::vector<GarbledTable> tables;
        engine.run_cycle(tables);
        std::vector<uint8_t> payload;
        put_u32(payload, echo_cycle);
        put_u32(payload, uint32_t(tables.size()));
        size_t off = payload.size();
        payload.resize(off + tables.size() * GarbledTable::kWireSize);
        for (const auto& t : tables) {
            t.encode(payload.data() + off);
            off += GarbledTable::kWireSize;
        }
        return payload;
    }
};

template <class Fault>
void expect_evaluator_failure(Fault&& fault) {
    auto c = bench::gen_adder(4);
    auto [g_ch, e_ch] = make_memory_pipe();
    std::exception_ptr g_err;
    std::thread garbler([&, ch = std::move(g_ch)]() mutable {
        try {
            ScriptedGarbler sg(c, std::move(ch), 9);
            sg.prelude(BitVec(4, 1), 1);
            fault(sg);
        } catch (...) {
            g_err = std::current_exception();  // peer abort tears us down; fine
        }
    });
    DealerOt ot(true);
    BitVec b = bits_from_u64(3, 4);
    bool threw = false;
    try {
        run_evaluator_session(c, b, {}, 1, *e_ch, ot, OutputPolicy::Both);
    } catch (const TransportError&) {
        threw = true;
    } catch (const ProtocolError&) {
        threw = true;
    } catch (const DesyncError&) {
        threw = true;
    }
    e_ch->close();
    garbler.join();
    CHECK(threw);
}

}  // namespace

TEST_CASE("fault: tables frame with wrong cycle echo") {
    expect_evaluator_failure([](ScriptedGarbler& sg) {
        send_frame(*sg.ch, MsgType::Tables, sg.cycle_tables_payload(2));
    });
}

TEST_CASE("fault: count field disagreeing with frame length") {
    expect_evaluator_failure([](ScriptedGarbler& sg) {
        auto payload = sg.cycle_tables_payload(1);
        payload[7] += 1;  // count+1
        send_frame(*sg.ch, MsgType::Tables, payload);
    });
}

TEST_CASE("fault: bad frame type mid-session") {
    expect_evaluator_failure([](ScriptedGarbler& sg) {
        uint8_t junk[5] = {0x33, 0, 0, 0, 0};
        sg.ch->write_all(junk, 5);
    });
}

TEST_CASE("fault: truncation mid-frame") {
    expect_evaluator_failure([](ScriptedGarbler& sg) {
        auto payload = sg.cycle_tables_payload(1);
        uint8_t hdr[5] = {uint8_t(MsgType::Tables), 0, 0,
                          uint8_t(payload.size() >> 8), uint8_t(payload.size())};
        sg.ch->write_all(hdr, 5);
        sg.ch->write_all(payload.data(), payload.size() / 2);
        sg.ch->close();
    });
}

TEST_CASE("fault: junk output label makes the garbler abort with DecodeError") {
    auto c = bench::gen_adder(2);
    auto [g_ch, e_ch] = make_memory_pipe();
    std::exception_ptr g_err;
    std::thread garbler([&] {
        try {
            DealerOt ot(true);
            run_garbler_session(c, BitVec(2, 1), {}, 1, *g_ch, ot,
                                OutputPolicy::Both, 4);
        } catch (...) {
            g_err = std::current_exception();
        }
    });
    // scripted evaluator: plays honestly until the output share, then lies
    (void)recv_frame(*e_ch);  // hello
    send_frame(*e_ch, MsgType::Hello, hello_payload(c, 1, {}));
    (void)recv_frame(*e_ch);  // labels
    send_frame(*e_ch, MsgType::OtDealerChoices, pack_bits(BitVec(2, 0)));
    (void)recv_frame(*e_ch);  // ot labels
    (void)recv_frame(*e_ch);  // tables
    std::vector<uint8_t> junk;
    for (int i = 0; i < 2; i++) {
        junk.push_back(1);
        for (int k = 0; k < 16; k++) junk.push_back(uint8_t(0xcc));
    }
    send_frame(*e_ch, MsgType::OutputLabels, junk);
    garbler.join();
    REQUIRE(g_err);
    CHECK_THROWS_AS(std::rethrow_exception(g_err), DecodeError);
}

TEST_CASE("stream conservation: one tables frame per cycle, every frame "
          "consumed") {
    // 3-cycle sequential circuit: accumulator over an AND mix
    bench::CircuitBuilder bb("seq");
    auto a = bb.garbler_inputs(2);
    auto e = bb.evaluator_inputs(2);
    WireId acc = bb.wire();
    WireId m = bb.gate(GateKind::And, a[0], e[0]);
    WireId m2 = bb.gate(GateKind::Xor, m, a[1]);
    WireId m3 = bb.gate(GateKind::And, m2, e[1]);
    WireId nxt = bb.gate(GateKind::Xor, acc, m3);
    bb.dff(acc, nxt, FlipFlopInit{FlipFlopInit::Kind::Const0, 0});
    bb.output(nxt);
    auto c = bb.build();

    const uint32_t cc = 3;
    auto r = test::run_recorded(c, {1, 0}, {1, 1}, {}, cc, OutputPolicy::Both, 19);
    auto frames = test::split_frames(r.garbler_sent);
    uint32_t table_frames = 0;
    for (const auto& f : frames)
        if (f.type == MsgType::Tables) table_frames++;
    CHECK(table_frames == cc);
    CHECK(r.garbler.outputs == plain_eval(c, {1, 0}, {1, 1}, {}, cc).outputs);
    // totals agree with the per-cycle stats on both ends
    uint64_t g_total = 0;
    for (const auto& st : r.garbler.cycle_stats) g_total += st.tables_emitted;
    CHECK(g_total == r.garbler.total_tables);
    CHECK(r.garbler.total_tables == r.evaluator.total_tables);
}

TEST_CASE("transcript shape is private-input independent") {
    auto c = bench::gen_comparator(8);
    std::mt19937_64 rng(31);
    BitVec a1 = test::random_bits(rng, 8), b1 = test::random_bits(rng, 8);
    BitVec a2 = test::random_bits(rng, 8), b2 = test::random_bits(rng, 8);
    auto r1 = test::run_recorded(c, a1, b1, {}, 1, OutputPolicy::Both, 77);
    auto r2 = test::run_recorded(c, a2, b2, {}, 1, OutputPolicy::Both, 77);

    CHECK(r1.garbler_sent.size() == r2.garbler_sent.size());
    CHECK(r1.evaluator_sent.size() == r2.evaluator_sent.size());
    auto f1 = test::split_frames(r1.garbler_sent);
    auto f2 = test::split_frames(r2.garbler_sent);
    REQUIRE(f1.size() == f2.size());
    for (size_t i = 0; i < f1.size(); i++) {
        CHECK(f1[i].type == f2[i].type);
        CHECK(f1[i].payload.size() == f2[i].payload.size());
        bool label_bearing = f1[i].type == MsgType::GarblerInputLabels ||
                             f1[i].type == MsgType::OtDealerLabels ||
                             f1[i].type == MsgType::OutputPlaintext;
        // same seed, same public inputs: even the tables are byte-identical
        if (!label_bearing) CHECK(f1[i].payload == f2[i].payload);
    }
}
