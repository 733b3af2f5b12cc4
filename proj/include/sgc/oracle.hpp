#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sgc/bitvec.hpp"
#include "sgc/circuit.hpp"

namespace sgc {

/// Reference evaluator: computes every gate every cycle, no skipping, so
/// it shares no shortcut logic with the garbling path it is used to check.
struct PlainTrace {
    std::vector<std::vector<uint8_t>> wire_values;  // [cycle][wire]
    BitVec outputs;                                 // after the last cycle
};

PlainTrace plain_eval(const Circuit& c, const BitVec& a, const BitVec& b,
                      const BitVec& p, uint32_t cycles);

struct EquivMismatch {
    uint64_t case_index = 0;
    BitVec a, b, p;
    BitVec expected, got;
};

struct EquivVerdict {
    bool refused = false;
    std::string refusal_reason;
    uint64_t cases_run = 0;
    std::vector<EquivMismatch> mismatches;
    bool ok() const { return !refused && mismatches.empty(); }
};

/// Runs the full two-party protocol in process for every private input
/// assignment (and each supplied public assignment; all-zeros when the
/// circuit has public bits and none are given) and compares the decoded
/// outputs against plain_eval. Refuses when the private input space
/// exceeds max_private_bits.
EquivVerdict exhaustive_equiv(const Circuit& c, uint32_t cycles,
                              uint32_t max_private_bits = 16,
                              std::vector<BitVec> public_assignments = {});

}  // namespace sgc
