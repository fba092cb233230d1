// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "idka/backend/encoding.hpp"

#include <string>
#include <vector>

namespace idka::protocol
{

struct TranscriptMessage
{
    std::size_t seq = 0;
    std::string sender_id;
    ValueKind kind = ValueKind::g1;
    Bytes bytes;
};

/// Short fingerprint of a parameter set, used as the transcript's parameter reference.
std::string params_ref(const PairingParams& pp);

/// Append-only record of one run. Stored as JSON lines: a header
/// {protocol, params_ref, ids} then {seq, sender_id, kind, bytes_hex} per message.
class Transcript
{
public:
    Transcript() = default;
    Transcript(std::string protocol, std::string params_ref, std::string initiator_id, std::string responder_id);

    void append(std::string sender_id, ValueKind kind, Bytes bytes);

    [[nodiscard]] const std::string& protocol() const noexcept { return protocol_; }
    [[nodiscard]] const std::string& params_reference() const noexcept { return params_ref_; }
    [[nodiscard]] const std::string& initiator() const noexcept { return initiator_; }
    [[nodiscard]] const std::string& responder() const noexcept { return responder_; }
    [[nodiscard]] const std::vector<TranscriptMessage>& messages() const noexcept { return messages_; }

    /// Injective serialization of the messages (seq, sender, kind, bytes; each length-framed).
    [[nodiscard]] Bytes canonical_bytes() const;

    [[nodiscard]] std::string to_jsonl() const;
    /// Throws ConfigError on malformed input.
    static Transcript from_jsonl(const std::string& text);

    /// Flips bits of one byte of one message; for tamper tests.
    void mutate(std::size_t message_index, std::size_t byte_index, std::uint8_t xor_mask);

private:
    std::string protocol_;
    std::string params_ref_;
    std::string initiator_;
    std::string responder_;
    std::vector<TranscriptMessage> messages_;
};

}  // namespace idka::protocol
