#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sgc/bitvec.hpp"
#include "sgc/circuit.hpp"
#include "sgc/skipgate.hpp"

namespace sgc {

// Wire protocol. Every message is one frame:
//   msg_type(1) || length(4, big-endian) || payload(length bytes)
//
// msg_type   payload
//   0x01 HELLO            version(1) digest(32) cc(4) p_len(4) p_bits(ceil/8)
//   0x02 GARBLER_INPUT_LABELS   n_g x 16
//   0x03 OT_DEALER_CHOICES      ceil(n_e/8), LSB-first
//   0x04 OT_DEALER_LABELS       n_e x 16
//   0x05 TABLES           cycle(4) count(4) entries(36 each)
//   0x06 OUTPUT_LABELS    per output: tag(1) then bit(1) or label(16)
//   0x07 OUTPUT_PLAINTEXT packed output bits, or empty (ack)
//   0x7F ABORT            utf-8 reason
enum class MsgType : uint8_t {
    Hello = 0x01,
    GarblerInputLabels = 0x02,
    OtDealerChoices = 0x03,
    OtDealerLabels = 0x04,
    Tables = 0x05,
    OutputLabels = 0x06,
    OutputPlaintext = 0x07,
    Abort = 0x7f,
};

constexpr uint8_t kProtocolVersion = 1;

struct TransportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct HandshakeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ProtocolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OtPolicyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reliable ordered byte stream with traffic counters.
class ByteChannel {
  public:
    virtual ~ByteChannel() = default;

    void write_all(const uint8_t* data, size_t n) {
        do_write(data, n);
        bytes_sent_ += n;
    }
    void read_all(uint8_t* data, size_t n) {
        do_read(data, n);
        bytes_received_ += n;
    }
    virtual void close() = 0;

    uint64_t bytes_sent() const { return bytes_sent_; }
    uint64_t bytes_received() const { return bytes_received_; }

  protected:
    virtual void do_write(const uint8_t* data, size_t n) = 0;
    virtual void do_read(uint8_t* data, size_t n) = 0;

  private:
    uint64_t bytes_sent_ = 0;
    uint64_t bytes_received_ = 0;
};

/// In-process duplex pipe; the two returned channels are the two ends.
/// Reads drain buffered data before reporting a close.
std::pair<std::unique_ptr<ByteChannel>, std::unique_ptr<ByteChannel>>
make_memory_pipe();

/// Wraps a channel and records every byte sent through it (one direction
/// of a transcript).
class RecordingChannel : public ByteChannel {
  public:
    explicit RecordingChannel(ByteChannel& inner) : inner_(inner) {}
    void close() override { inner_.close(); }
    const std::vector<uint8_t>& sent() const { return sent_; }

  protected:
    void do_write(const uint8_t* data, size_t n) override {
        sent_.insert(sent_.end(), data, data + n);
        inner_.write_all(data, n);
    }
    void do_read(uint8_t* data, size_t n) override { inner_.read_all(data, n); }

  private:
    ByteChannel& inner_;
    std::vector<uint8_t> sent_;
};

std::unique_ptr<ByteChannel> tcp_listen_one(const std::string& host, uint16_t port);
std::unique_ptr<ByteChannel> tcp_connect(const std::string& host, uint16_t port,
                                         int attempts = 50);

struct Frame {
    MsgType type;
    std::vector<uint8_t> payload;
};

void send_frame(ByteChannel& ch, MsgType type, std::span<const uint8_t> payload);
Frame recv_frame(ByteChannel& ch);
/// Receives a frame and checks its type; an ABORT frame raises
/// ProtocolError carrying the peer's reason.
Frame expect_frame(ByteChannel& ch, MsgType type);
void send_abort(ByteChannel& ch, const std::string& reason) noexcept;

struct SessionConfig {
    std::array<uint8_t, 32> digest{};
    uint32_t cycles = 1;
    BitVec public_bits;
};

enum class OutputPolicy : uint8_t { Both, GarblerOnly };

/// 1-out-of-2 OT on 16-byte messages, one batch per session.
class ObliviousTransfer {
  public:
    virtual ~ObliviousTransfer() = default;
    virtual void send(ByteChannel& ch,
                      std::span<const std::pair<Label, Label>> pairs) = 0;
    virtual std::vector<Label> receive(ByteChannel& ch, const BitVec& choices) = 0;
    virtual std::string name() const = 0;
};

/// Test-only OT: the receiver sends its choice bits in the clear and the
/// sender answers with the chosen labels. Functionally correct, zero
/// privacy for the choices; refuses to run unless explicitly enabled.
class DealerOt : public ObliviousTransfer {
  public:
    explicit DealerOt(bool insecure_test_ot_enabled)
        : enabled_(insecure_test_ot_enabled) {}
    void send(ByteChannel& ch,
              std::span<const std::pair<Label, Label>> pairs) override;
    std::vector<Label> receive(ByteChannel& ch, const BitVec& choices) override;
    std::string name() const override { return "dealer"; }

  private:
    void check_enabled() const;
    bool enabled_;
};

struct SessionResult {
    std::vector<CycleStats> cycle_stats;
    bool have_outputs = false;
    BitVec outputs;
    uint64_t bytes_sent = 0;
    uint64_t bytes_received = 0;
    uint64_t total_tables = 0;
    uint64_t total_skipped = 0;
    double wall_seconds = 0.0;
};

SessionResult run_garbler_session(const Circuit& c, const BitVec& a,
                                  const BitVec& p, uint32_t cycles,
                                  ByteChannel& ch, ObliviousTransfer& ot,
                                  OutputPolicy policy,
                                  std::optional<uint64_t> seed = std::nullopt);

SessionResult run_evaluator_session(const Circuit& c, const BitVec& b,
                                    const BitVec& p, uint32_t cycles,
                                    ByteChannel& ch, ObliviousTransfer& ot,
                                    OutputPolicy policy);

struct SimulateResult {
    SessionResult garbler;
    SessionResult evaluator;
};

/// Runs both roles concurrently over an in-process pipe with the dealer
/// OT (always permitted: no bits leave the process).
SimulateResult simulate_session(const Circuit& c, const BitVec& a,
                                const BitVec& b, const BitVec& p,
                                uint32_t cycles, OutputPolicy policy,
                                std::optional<uint64_t> seed = std::nullopt);

}  // namespace sgc
