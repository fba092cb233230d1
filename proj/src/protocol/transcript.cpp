// SPDX-License-Identifier: Apache-2.0
#include "idka/protocol/transcript.hpp"

#include "idka/backend/hash.hpp"
#include "idka/errors.hpp"

#include <json.hpp>

#include <sstream>

namespace idka::protocol
{
namespace
{
std::string_view kind_name(ValueKind k)
{
    switch (k)
    {
    case ValueKind::g1:
        return "g1";
    case ValueKind::gt:
        return "gt";
    case ValueKind::scalar:
        return "scalar";
    }
    return "?";
}

ValueKind kind_from_name(std::string_view s)
{
    if (s == "g1")
        return ValueKind::g1;
    if (s == "gt")
        return ValueKind::gt;
    throw ConfigError("transcript: unknown message kind: " + std::string(s));
}
}  // namespace

std::string params_ref(const PairingParams& pp)
{
    const auto d = sha256(to_bytes(params_to_json(pp).dump()));
    return to_hex(ByteView(d.data(), 8));
}

Transcript::Transcript(std::string protocol, std::string params_ref, std::string initiator_id, std::string responder_id)
  : protocol_(std::move(protocol)),
    params_ref_(std::move(params_ref)),
    initiator_(std::move(initiator_id)),
    responder_(std::move(responder_id))
{}

void Transcript::append(std::string sender_id, ValueKind kind, Bytes bytes)
{
    messages_.push_back({messages_.size(), std::move(sender_id), kind, std::move(bytes)});
}

Bytes Transcript::canonical_bytes() const
{
    Bytes out;
    idka::append(out, int_to_bytes(messages_.size(), 4));
    for (const auto& m : messages_)
    {
        idka::append(out, int_to_bytes(m.seq, 4));
        append_framed(out, to_bytes(m.sender_id));
        append_framed(out, to_bytes(kind_name(m.kind)));
        append_framed(out, m.bytes);
    }
    return out;
}

std::string Transcript::to_jsonl() const
{
    std::ostringstream os;
    const nlohmann::json header = {
        {"protocol", protocol_}, {"params_ref", params_ref_}, {"ids", {initiator_, responder_}}};
    os << header.dump() << '\n';
    for (const auto& m : messages_)
    {
        const nlohmann::json line = {
            {"seq", m.seq}, {"sender_id", m.sender_id}, {"kind", kind_name(m.kind)}, {"bytes_hex", to_hex(m.bytes)}};
        os << line.dump() << '\n';
    }
    return os.str();
}

Transcript Transcript::from_jsonl(const std::string& text)
{
    std::istringstream is(text);
    std::string line;
    Transcript t;
    bool have_header = false;
    try
    {
        while (std::getline(is, line))
        {
            if (line.find_first_not_of(" \t\r") == std::string::npos)
                continue;
            const auto j = nlohmann::json::parse(line);
            if (!have_header)
            {
                const auto& ids = j.at("ids");
                if (!ids.is_array() || ids.size() != 2)
                    throw ConfigError("transcript: ids must list two identities");
                t = Transcript(j.at("protocol").get<std::string>(), j.at("params_ref").get<std::string>(),
                               ids[0].get<std::string>(), ids[1].get<std::string>());
                have_header = true;
                continue;
            }
            const auto seq = j.at("seq").get<std::size_t>();
            if (seq != t.messages_.size())
                throw ConfigError("transcript: messages out of sequence");
            t.append(j.at("sender_id").get<std::string>(), kind_from_name(j.at("kind").get<std::string>()),
                     from_hex(j.at("bytes_hex").get<std::string>()));
        }
    }
    catch (const nlohmann::json::exception& e)
    {
        throw ConfigError(std::string("transcript: ") + e.what());
    }
    catch (const std::invalid_argument& e)
    {
        throw ConfigError(std::string("transcript: ") + e.what());
    }
    if (!have_header)
        throw ConfigError("transcript: missing header line");
    return t;
}

void Transcript::mutate(std::size_t message_index, std::size_t byte_index, std::uint8_t xor_mask)
{
    auto& b = messages_.at(message_index).bytes;
    b.at(byte_index) ^= xor_mask;
}

}  // namespace idka::protocol
