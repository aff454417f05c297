#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "oncsim/capacity.hpp"
#include "oncsim/crc32.hpp"
#include "oncsim/errors.hpp"
#include "oncsim/fading.hpp"
#include "oncsim/random.hpp"

// Bit-exact protocol state machine. Wire format of a frame carrying an
// L-byte payload: the payload bytes followed by the 4-byte CRC, most
// significant byte first, L+4 bytes total. The relay XORs entire frames
// (payload and check field alike), so a user that cancels the known frame
// out of an XOR recovers the other frame complete with its original CRC.

namespace oncsim {

using Bytes = std::vector<std::uint8_t>;

struct Frame {
    Bytes payload;
    std::uint32_t check{0};
    CrcCode code{CrcCode::code1};

    Bytes serialize() const {
        Bytes wire = payload;
        wire.push_back(static_cast<std::uint8_t>(check >> 24));
        wire.push_back(static_cast<std::uint8_t>(check >> 16));
        wire.push_back(static_cast<std::uint8_t>(check >> 8));
        wire.push_back(static_cast<std::uint8_t>(check));
        return wire;
    }
};

inline constexpr std::size_t kCheckBytes = 4;

inline Frame crc_encode(const Bytes& payload, CrcCode code) {
    if (payload.empty()) throw framing_error("crc_encode: payload must not be empty");
    Frame f;
    f.payload = payload;
    f.code = code;
    f.check = crc32_compute(code, payload);
    return f;
}

// Checks the trailing 4-byte field of a wire word against the CRC of its
// payload part.
inline bool crc_verify(const Bytes& word, CrcCode code) {
    if (word.size() <= kCheckBytes) return false;
    const std::span<const std::uint8_t> payload(word.data(), word.size() - kCheckBytes);
    const std::uint32_t expect = crc32_compute(code, payload);
    const std::size_t off = word.size() - kCheckBytes;
    const std::uint32_t got = (static_cast<std::uint32_t>(word[off]) << 24) |
                              (static_cast<std::uint32_t>(word[off + 1]) << 16) |
                              (static_cast<std::uint32_t>(word[off + 2]) << 8) |
                              static_cast<std::uint32_t>(word[off + 3]);
    return expect == got;
}

inline Bytes payload_of(const Bytes& word) {
    return Bytes(word.begin(), word.end() - static_cast<std::ptrdiff_t>(kCheckBytes));
}

inline Bytes xor_words(const Bytes& a, const Bytes& b) {
    if (a.size() != b.size()) throw framing_error("xor_words: words must have equal length");
    Bytes out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
    return out;
}

// What gets transmitted when the relay decodes neither message.
inline Bytes null_word(std::size_t wire_size) { return Bytes(wire_size, 0); }

// Flips a uniformly random nonzero subset of bits, so a failed hop never
// delivers the clean word.
inline Bytes corrupt_word(const Bytes& word, RandomStream& noise) {
    if (word.empty()) throw framing_error("corrupt_word: empty word");
    Bytes out = word;
    std::uint64_t bits = 0;
    unsigned avail = 0;
    bool flipped = false;
    for (auto& byte : out) {
        if (avail == 0) {
            bits = noise.next_u64();
            avail = 8;
        }
        const auto mask = static_cast<std::uint8_t>(bits & 0xFFu);
        bits >>= 8;
        --avail;
        byte ^= mask;
        if (mask != 0) flipped = true;
    }
    if (!flipped) {
        const std::uint64_t z = noise.next_u64();
        out[z % out.size()] ^= static_cast<std::uint8_t>(1u << ((z >> 32) % 8));
    }
    return out;
}

struct ReceivedWord {
    Bytes bytes;
    int slot{0};
};

enum class RelayActionKind { xor_both, forward_first, forward_second, null_sequence };

struct RelayAction {
    RelayActionKind kind{RelayActionKind::null_sequence};
    Bytes word; // empty for null_sequence

    // The wire word the relay actually sends in slot n+2.
    Bytes transmitted(std::size_t wire_size) const {
        return kind == RelayActionKind::null_sequence ? null_word(wire_size) : word;
    }
};

// Relay decision: check the slot-n word against code 1, the slot-n+1 word
// against code 2, and act on the outcome pair.
inline RelayAction relay_decide(const ReceivedWord& rx_n, const ReceivedWord& rx_n1) {
    if (rx_n.bytes.size() != rx_n1.bytes.size()) {
        throw framing_error("relay_decide: received words must have equal length");
    }
    const bool first = crc_verify(rx_n.bytes, CrcCode::code1);
    const bool second = crc_verify(rx_n1.bytes, CrcCode::code2);
    if (first && second) return {RelayActionKind::xor_both, xor_words(rx_n.bytes, rx_n1.bytes)};
    if (first) return {RelayActionKind::forward_first, rx_n.bytes};
    if (second) return {RelayActionKind::forward_second, rx_n1.bytes};
    return {RelayActionKind::null_sequence, {}};
}

inline RelayState relay_action_state(RelayActionKind kind) {
    switch (kind) {
    case RelayActionKind::xor_both: return RelayState::decoded_both;
    case RelayActionKind::forward_first: return RelayState::decoded_first;
    case RelayActionKind::forward_second: return RelayState::decoded_second;
    case RelayActionKind::null_sequence: return RelayState::decoded_none;
    }
    return RelayState::decoded_none;
}

struct DecodeResult {
    std::optional<Bytes> recovered;
    int branch{0}; // 1..3, or 0 when no branch passed

    bool ok() const { return recovered.has_value(); }
};

// User 1 decoder: three parallel branches, no relay feedback consulted.
//   branch 1: the direct slot-n word passes code 1
//   branch 2: the slot-n+1 word passes code 2 and cancelling it out of the
//             slot-n+2 word leaves a word that passes code 1
//   branch 3: the slot-n+2 word passes code 1 as-is
// The lowest-numbered passing branch wins.
inline DecodeResult user1_decode(const std::optional<ReceivedWord>& rx_n,
                                 const std::optional<ReceivedWord>& rx_n1,
                                 const std::optional<ReceivedWord>& rx_n2) {
    if (rx_n && crc_verify(rx_n->bytes, CrcCode::code1)) {
        return {payload_of(rx_n->bytes), 1};
    }
    if (rx_n1 && rx_n2 && rx_n1->bytes.size() == rx_n2->bytes.size() &&
        crc_verify(rx_n1->bytes, CrcCode::code2)) {
        const Bytes combined = xor_words(rx_n2->bytes, rx_n1->bytes);
        if (crc_verify(combined, CrcCode::code1)) {
            return {payload_of(combined), 2};
        }
    }
    if (rx_n2 && crc_verify(rx_n2->bytes, CrcCode::code1)) {
        return {payload_of(rx_n2->bytes), 3};
    }
    return {};
}

// Mirror image at user 2: the direct slot is n+1 (code 2), the overheard
// slot is n (code 1).
inline DecodeResult user2_decode(const std::optional<ReceivedWord>& rx_n,
                                 const std::optional<ReceivedWord>& rx_n1,
                                 const std::optional<ReceivedWord>& rx_n2) {
    if (rx_n1 && crc_verify(rx_n1->bytes, CrcCode::code2)) {
        return {payload_of(rx_n1->bytes), 1};
    }
    if (rx_n && rx_n2 && rx_n->bytes.size() == rx_n2->bytes.size() &&
        crc_verify(rx_n->bytes, CrcCode::code1)) {
        const Bytes combined = xor_words(rx_n2->bytes, rx_n->bytes);
        if (crc_verify(combined, CrcCode::code2)) {
            return {payload_of(combined), 2};
        }
    }
    if (rx_n2 && crc_verify(rx_n2->bytes, CrcCode::code2)) {
        return {payload_of(rx_n2->bytes), 3};
    }
    return {};
}

struct PacketTrialResult {
    DecodeResult user1;
    DecodeResult user2;
    RelayAction relay_action;
    RelayState relay_state{RelayState::decoded_none};
};

// Runs one protocol round over a channel realization: a hop delivers the
// clean word when its slot mutual information exceeds the rate, otherwise
// a corrupted copy. Decisions then run bit-exactly on the delivered words.
inline PacketTrialResult run_packet_trial(const TrialDraw& trial, const RateParams& params,
                                          const Bytes& payload1, const Bytes& payload2,
                                          RandomStream& noise) {
    if (payload1.size() != payload2.size()) {
        throw framing_error("run_packet_trial: payloads must have equal length");
    }
    const Bytes wire1 = crc_encode(payload1, CrcCode::code1).serialize();
    const Bytes wire2 = crc_encode(payload2, CrcCode::code2).serialize();
    const std::size_t wire_size = wire1.size();

    auto deliver = [&](const Bytes& sent, const SlotRealization& slot) {
        const bool clean = slot_decodes(mutual_information(slot, params), params.rate);
        return clean ? sent : corrupt_word(sent, noise);
    };

    PacketTrialResult out;
    const ReceivedWord relay_rx_n{deliver(wire1, trial.relay[0]), 0};
    const ReceivedWord relay_rx_n1{deliver(wire2, trial.relay[1]), 1};
    out.relay_action = relay_decide(relay_rx_n, relay_rx_n1);
    out.relay_state = relay_action_state(out.relay_action.kind);

    const Bytes relay_word = out.relay_action.transmitted(wire_size);

    const ReceivedWord u1_rx_n{deliver(wire1, trial.user1[0]), 0};
    const ReceivedWord u1_rx_n1{deliver(wire2, trial.user1[1]), 1};
    const ReceivedWord u1_rx_n2{deliver(relay_word, trial.user1[2]), 2};
    out.user1 = user1_decode(u1_rx_n, u1_rx_n1, u1_rx_n2);

    const ReceivedWord u2_rx_n{deliver(wire1, trial.user2[0]), 0};
    const ReceivedWord u2_rx_n1{deliver(wire2, trial.user2[1]), 1};
    const ReceivedWord u2_rx_n2{deliver(relay_word, trial.user2[2]), 2};
    out.user2 = user2_decode(u2_rx_n, u2_rx_n1, u2_rx_n2);
    return out;
}

} // namespace oncsim
