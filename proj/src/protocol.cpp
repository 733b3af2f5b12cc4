#include "sgc/protocol.hpp"

#include <chrono>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>
#include <thread>

#include "sgc/gcgarble.hpp"
#include "sgc/sha256.hpp"

namespace sgc {

namespace {

constexpr size_t kMaxFrameLen = 1u << 30;

void put_u32(std::vector<uint8_t>& v, uint32_t x) {
    v.push_back(uint8_t(x >> 24));
    v.push_back(uint8_t(x >> 16));
    v.push_back(uint8_t(x >> 8));
    v.push_back(uint8_t(x));
}
uint32_t get_u32(const uint8_t* p) {
    return uint32_t(p[0]) << 24 | uint32_t(p[1]) << 16 | uint32_t(p[2]) << 8 |
           uint32_t(p[3]);
}

void append_label(std::vector<uint8_t>& v, const Label& l) {
    auto b = l.to_bytes();
    v.insert(v.end(), b.begin(), b.end());
}

}  // namespace

// ---------------------------------------------------------------------------
// In-memory pipe
// ---------------------------------------------------------------------------

namespace {

class MemoryQueue {
  public:
    void write(const uint8_t* data, size_t n) {
        std::lock_guard lk(m_);
        if (closed_) throw TransportError("write on closed channel");
        buf_.insert(buf_.end(), data, data + n);
        cv_.notify_all();
    }
    void read(uint8_t* data, size_t n) {
        std::unique_lock lk(m_);
        size_t off = 0;
        while (off < n) {
            cv_.wait(lk, [&] { return !buf_.empty() || closed_; });
            if (buf_.empty()) throw TransportError("channel closed by peer");
            size_t take = std::min(n - off, buf_.size());
            std::copy(buf_.begin(), buf_.begin() + long(take), data + off);
            buf_.erase(buf_.begin(), buf_.begin() + long(take));
            off += take;
        }
    }
    void close() {
        std::lock_guard lk(m_);
        closed_ = true;
        cv_.notify_all();
    }

  private:
    std::mutex m_;
    std::condition_variable cv_;
    std::deque<uint8_t> buf_;
    bool closed_ = false;
};

class MemoryChannel : public ByteChannel {
  public:
    MemoryChannel(std::shared_ptr<MemoryQueue> in, std::shared_ptr<MemoryQueue> out)
        : in_(std::move(in)), out_(std::move(out)) {}
    void close() override {
        in_->close();
        out_->close();
    }

  protected:
    void do_write(const uint8_t* data, size_t n) override { out_->write(data, n); }
    void do_read(uint8_t* data, size_t n) override { in_->read(data, n); }

  private:
    std::shared_ptr<MemoryQueue> in_, out_;
};

}  // namespace

std::pair<std::unique_ptr<ByteChannel>, std::unique_ptr<ByteChannel>>
make_memory_pipe() {
    auto q_ab = std::make_shared<MemoryQueue>();
    auto q_ba = std::make_shared<MemoryQueue>();
    return {std::make_unique<MemoryChannel>(q_ba, q_ab),
            std::make_unique<MemoryChannel>(q_ab, q_ba)};
}

// ---------------------------------------------------------------------------
// Framing
// ---------------------------------------------------------------------------

void send_frame(ByteChannel& ch, MsgType type, std::span<const uint8_t> payload) {
    if (payload.size() > kMaxFrameLen) throw ProtocolError("frame too large");
    uint8_t hdr[5];
    hdr[0] = uint8_t(type);
    hdr[1] = uint8_t(payload.size() >> 24);
    hdr[2] = uint8_t(payload.size() >> 16);
    hdr[3] = uint8_t(payload.size() >> 8);
    hdr[4] = uint8_t(payload.size());
    ch.write_all(hdr, 5);
    if (!payload.empty()) ch.write_all(payload.data(), payload.size());
}

Frame recv_frame(ByteChannel& ch) {
    uint8_t hdr[5];
    ch.read_all(hdr, 5);
    Frame f;
    switch (hdr[0]) {
        case 0x01: case 0x02: case 0x03: case 0x04:
        case 0x05: case 0x06: case 0x07: case 0x7f:
            f.type = MsgType(hdr[0]);
            break;
        default:
            throw ProtocolError("unknown message type 0x" +
                                hex_encode(hdr, 1));
    }
    uint32_t len = get_u32(hdr + 1);
    if (len > kMaxFrameLen) throw ProtocolError("oversized frame");
    f.payload.resize(len);
    if (len > 0) ch.read_all(f.payload.data(), len);
    return f;
}

Frame expect_frame(ByteChannel& ch, MsgType type) {
    Frame f = recv_frame(ch);
    if (f.type == MsgType::Abort)
        throw ProtocolError("peer aborted: " +
                            std::string(f.payload.begin(), f.payload.end()));
    if (f.type != type)
        throw ProtocolError("unexpected message type 0x" +
                            hex_encode(reinterpret_cast<uint8_t*>(&f.type), 1));
    return f;
}

void send_abort(ByteChannel& ch, const std::string& reason) noexcept {
    try {
        send_frame(ch, MsgType::Abort,
                   std::span(reinterpret_cast<const uint8_t*>(reason.data()),
                             reason.size()));
    } catch (...) {
        // channel already unusable; nothing more to do
    }
}

// ---------------------------------------------------------------------------
// Handshake
// ---------------------------------------------------------------------------

namespace {

std::vector<uint8_t> encode_hello(const SessionConfig& cfg) {
    std::vector<uint8_t> v;
    v.push_back(kProtocolVersion);
    v.insert(v.end(), cfg.digest.begin(), cfg.digest.end());
    put_u32(v, cfg.cycles);
    put_u32(v, uint32_t(cfg.public_bits.size()));
    auto packed = pack_bits(cfg.public_bits);
    v.insert(v.end(), packed.begin(), packed.end());
    return v;
}

void handshake(ByteChannel& ch, const SessionConfig& mine) {
    send_frame(ch, MsgType::Hello, encode_hello(mine));
    Frame f = recv_frame(ch);
    if (f.type == MsgType::Abort)
        throw HandshakeError("peer aborted during handshake: " +
                             std::string(f.payload.begin(), f.payload.end()));
    if (f.type != MsgType::Hello) throw HandshakeError("expected HELLO");
    auto fail = [&](const std::string& field) {
        send_abort(ch, field + " mismatch");
        throw HandshakeError(field + " mismatch");
    };
    if (f.payload.size() < 41) fail("hello length");
    if (f.payload[0] != kProtocolVersion) fail("protocol version");
    if (!std::equal(mine.digest.begin(), mine.digest.end(), f.payload.begin() + 1))
        fail("circuit digest");
    if (get_u32(f.payload.data() + 33) != mine.cycles) fail("cycle count");
    uint32_t p_len = get_u32(f.payload.data() + 37);
    if (p_len != mine.public_bits.size()) fail("public input length");
    if (f.payload.size() != 41 + (p_len + 7) / 8) fail("hello length");
    std::vector<uint8_t> p_bytes(f.payload.begin() + 41, f.payload.end());
    BitVec theirs = unpack_bits(p_bytes, p_len);
    if (theirs != mine.public_bits) fail("public input vector");
}

SessionConfig make_config(const Circuit& c, const BitVec& p, uint32_t cycles) {
    if (cycles < 1) throw ProtocolError("cycle count must be at least 1");
    SessionConfig cfg;
    cfg.digest = circuit_digest(c);
    cfg.cycles = cycles;
    cfg.public_bits = p;
    return cfg;
}

}  // namespace

// ---------------------------------------------------------------------------
// Dealer OT
// ---------------------------------------------------------------------------

void DealerOt::check_enabled() const {
    if (!enabled_)
        throw OtPolicyError(
            "dealer OT reveals choice bits to the sender; pass "
            "--insecure-test-ot to run it anyway");
}

void DealerOt::send(ByteChannel& ch,
                    std::span<const std::pair<Label, Label>> pairs) {
    check_enabled();
    Frame f = expect_frame(ch, MsgType::OtDealerChoices);
    BitVec choices = unpack_bits(f.payload, pairs.size());
    std::vector<uint8_t> reply;
    reply.reserve(pairs.size() * 16);
    for (size_t i = 0; i < pairs.size(); i++)
        append_label(reply, choices[i] ? pairs[i].second : pairs[i].first);
    send_frame(ch, MsgType::OtDealerLabels, reply);
}

std::vector<Label> DealerOt::receive(ByteChannel& ch, const BitVec& choices) {
    check_enabled();
    send_frame(ch, MsgType::OtDealerChoices, pack_bits(choices));
    Frame f = expect_frame(ch, MsgType::OtDealerLabels);
    if (f.payload.size() != choices.size() * 16)
        throw ProtocolError("OT label frame has wrong length");
    std::vector<Label> out;
    out.reserve(choices.size());
    for (size_t i = 0; i < choices.size(); i++)
        out.push_back(Label::from_bytes(f.payload.data() + 16 * i));
    return out;
}

// ---------------------------------------------------------------------------
// Sessions
// ---------------------------------------------------------------------------

namespace {

void check_input_len(const BitVec& v, uint32_t want, const char* what) {
    if (v.size() != want)
        throw ProtocolError(std::string(what) + " length " +
                            std::to_string(v.size()) + " does not match circuit (" +
                            std::to_string(want) + ")");
}

void finish_result(SessionResult& r, ByteChannel& ch,
                   std::chrono::steady_clock::time_point t0) {
    r.bytes_sent = ch.bytes_sent();
    r.bytes_received = ch.bytes_received();
    for (const auto& s : r.cycle_stats) {
        r.total_tables += s.tables_emitted;
        r.total_skipped += s.skipped;
    }
    r.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
}

}  // namespace

SessionResult run_garbler_session(const Circuit& c, const BitVec& a,
                                  const BitVec& p, uint32_t cycles,
                                  ByteChannel& ch, ObliviousTransfer& ot,
                                  OutputPolicy policy,
                                  std::optional<uint64_t> seed) {
    auto t0 = std::chrono::steady_clock::now();
    check_input_len(a, c.garbler_input_count, "garbler input");
    check_input_len(p, c.public_input_count, "public input");
    handshake(ch, make_config(c, p, cycles));

    GarblerEngine engine = seed ? GarblerEngine(c, *seed)
                                : GarblerEngine(c, LabelRng());
    engine.bind_public(p);

    // input labels for a, then the OT batch for b
    std::vector<uint8_t> label_bytes;
    label_bytes.reserve(size_t(c.garbler_input_count) * 16);
    for (uint32_t i = 0; i < c.garbler_input_count; i++)
        append_label(label_bytes, engine.garbler_input_label(i, a[i] != 0));
    send_frame(ch, MsgType::GarblerInputLabels, label_bytes);

    std::vector<std::pair<Label, Label>> pairs;
    pairs.reserve(c.evaluator_input_count);
    for (uint32_t i = 0; i < c.evaluator_input_count; i++)
        pairs.push_back(engine.evaluator_input_labels(i));
    ot.send(ch, pairs);

    SessionResult r;
    std::vector<GarbledTable> tables;
    for (uint32_t cyc = 1; cyc <= cycles; cyc++) {
        tables.clear();
        r.cycle_stats.push_back(engine.run_cycle(tables));
        std::vector<uint8_t> payload;
        payload.reserve(8 + tables.size() * GarbledTable::kWireSize);
        put_u32(payload, cyc);
        put_u32(payload, uint32_t(tables.size()));
        size_t off = payload.size();
        payload.resize(off + tables.size() * GarbledTable::kWireSize);
        for (const auto& t : tables) {
            t.encode(payload.data() + off);
            off += GarbledTable::kWireSize;
        }
        send_frame(ch, MsgType::Tables, payload);
    }

    // decode the evaluator's output shares
    Frame f = expect_frame(ch, MsgType::OutputLabels);
    auto states = engine.output_states();
    BitVec outputs(states.size());
    size_t off = 0;
    try {
        for (size_t i = 0; i < states.size(); i++) {
            if (off >= f.payload.size()) throw ProtocolError("output frame truncated");
            uint8_t tag = f.payload[off++];
            if (tag == 0) {
                if (off + 1 > f.payload.size())
                    throw ProtocolError("output frame truncated");
                bool bit = f.payload[off++] != 0;
                if (!states[i].is_public || states[i].bit != bit)
                    throw ProtocolError("public output disagreement on output " +
                                        std::to_string(i));
                outputs[i] = bit;
            } else if (tag == 1) {
                if (off + 16 > f.payload.size())
                    throw ProtocolError("output frame truncated");
                if (states[i].is_public)
                    throw ProtocolError("peer sent label for public output " +
                                        std::to_string(i));
                Label l = Label::from_bytes(f.payload.data() + off);
                off += 16;
                outputs[i] = engine.decode_output(i, l);
            } else {
                throw ProtocolError("bad output share tag");
            }
        }
        if (off != f.payload.size()) throw ProtocolError("output frame overlong");
    } catch (const std::exception& e) {
        send_abort(ch, e.what());
        throw;
    }

    if (policy == OutputPolicy::Both) {
        send_frame(ch, MsgType::OutputPlaintext, pack_bits(outputs));
    } else {
        send_frame(ch, MsgType::OutputPlaintext, {});
    }

    r.have_outputs = true;
    r.outputs = std::move(outputs);
    finish_result(r, ch, t0);
    return r;
}

SessionResult run_evaluator_session(const Circuit& c, const BitVec& b,
                                    const BitVec& p, uint32_t cycles,
                                    ByteChannel& ch, ObliviousTransfer& ot,
                                    OutputPolicy policy) {
    auto t0 = std::chrono::steady_clock::now();
    check_input_len(b, c.evaluator_input_count, "evaluator input");
    check_input_len(p, c.public_input_count, "public input");
    handshake(ch, make_config(c, p, cycles));

    EvaluatorEngine engine(c);
    engine.bind_public(p);

    Frame labels = expect_frame(ch, MsgType::GarblerInputLabels);
    if (labels.payload.size() != size_t(c.garbler_input_count) * 16)
        throw ProtocolError("garbler input label frame has wrong length");
    for (uint32_t i = 0; i < c.garbler_input_count; i++)
        engine.set_garbler_input_label(i,
                                       Label::from_bytes(labels.payload.data() + 16 * i));

    auto mine = ot.receive(ch, b);
    for (uint32_t i = 0; i < c.evaluator_input_count; i++)
        engine.set_evaluator_input_label(i, mine[i]);

    SessionResult r;
    std::vector<GarbledTable> tables;
    for (uint32_t cyc = 1; cyc <= cycles; cyc++) {
        Frame f = expect_frame(ch, MsgType::Tables);
        if (f.payload.size() < 8) throw ProtocolError("tables frame truncated");
        uint32_t echo = get_u32(f.payload.data());
        if (echo != cyc) {
            send_abort(ch, "cycle index mismatch");
            throw ProtocolError("cycle index mismatch: expected " +
                                std::to_string(cyc) + ", got " +
                                std::to_string(echo));
        }
        uint32_t count = get_u32(f.payload.data() + 4);
        if (f.payload.size() != 8 + size_t(count) * GarbledTable::kWireSize)
            throw ProtocolError("tables frame length disagrees with count");
        tables.clear();
        tables.reserve(count);
        for (uint32_t i = 0; i < count; i++)
            tables.push_back(
                GarbledTable::decode(f.payload.data() + 8 + size_t(i) * 36));
        try {
            r.cycle_stats.push_back(engine.run_cycle(tables));
        } catch (const std::exception& e) {
            send_abort(ch, e.what());
            throw;
        }
    }

    std::vector<uint8_t> payload;
    auto shares = engine.output_shares();
    for (const auto& s : shares) {
        if (s.is_public) {
            payload.push_back(0);
            payload.push_back(s.bit ? 1 : 0);
        } else {
            payload.push_back(1);
            append_label(payload, s.label);
        }
    }
    send_frame(ch, MsgType::OutputLabels, payload);

    Frame f = expect_frame(ch, MsgType::OutputPlaintext);
    if (policy == OutputPolicy::Both) {
        if (f.payload.size() != (shares.size() + 7) / 8)
            throw ProtocolError("plaintext output frame has wrong length");
        r.outputs = unpack_bits(f.payload, shares.size());
        r.have_outputs = true;
    } else {
        if (!f.payload.empty())
            throw ProtocolError("expected bare ack under garbler-only policy");
    }
    finish_result(r, ch, t0);
    return r;
}

SimulateResult simulate_session(const Circuit& c, const BitVec& a,
                                const BitVec& b, const BitVec& p,
                                uint32_t cycles, OutputPolicy policy,
                                std::optional<uint64_t> seed) {
    auto [g_ch, e_ch] = make_memory_pipe();
    SimulateResult result;
    std::exception_ptr g_err, e_err;

    std::thread garbler([&] {
        try {
            DealerOt ot(true);
            result.garbler =
                run_garbler_session(c, a, p, cycles, *g_ch, ot, policy, seed);
        } catch (...) {
            g_err = std::current_exception();
            g_ch->close();
        }
    });
    try {
        DealerOt ot(true);
        result.evaluator =
            run_evaluator_session(c, b, p, cycles, *e_ch, ot, policy);
    } catch (...) {
        e_err = std::current_exception();
        e_ch->close();
    }
    garbler.join();
    if (g_err) std::rethrow_exception(g_err);
    if (e_err) std::rethrow_exception(e_err);
    return result;
}

}  // namespace sgc
