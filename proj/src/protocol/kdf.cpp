// SPDX-License-Identifier: Apache-2.0
#include "idka/protocol/kdf.hpp"

#include "idka/backend/hash.hpp"

namespace idka::protocol
{

std::string SessionKey::hex() const
{
    return to_hex(bytes);
}

SessionKey derive_session_key(const PairingParams& pp, std::string_view protocol, std::string_view id_1,
                              std::string_view id_2, const Transcript& transcript, const std::vector<Value>& secret,
                              ByteView context)
{
    auto lo = id_1;
    auto hi = id_2;
    if (hi < lo)
        std::swap(lo, hi);

    Bytes in;
    append_framed(in, to_bytes("idka/session-key"));
    append_framed(in, to_bytes(protocol));
    append_framed(in, to_bytes(lo));
    append_framed(in, to_bytes(hi));
    append_framed(in, transcript.canonical_bytes());
    append(in, int_to_bytes(secret.size(), 4));
    for (const auto& v : secret)
        append_framed(in, encode(pp, v));
    append_framed(in, context);

    SessionKey k;
    k.bytes = sha256(in);
    return k;
}

}  // namespace idka::protocol
