// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "idka/backend/types.hpp"
#include "idka/protocol/transcript.hpp"

#include <array>
#include <string_view>
#include <vector>

namespace idka::protocol
{

struct SessionKey
{
    std::array<std::uint8_t, 32> bytes{};

    [[nodiscard]] std::string hex() const;
    friend bool operator==(const SessionKey&, const SessionKey&) = default;
};

/// Hash(protocol name || sorted ids || canonical transcript || encoded secret
/// components in order || context), every field length-framed. Role-independent.
SessionKey derive_session_key(const PairingParams& pp, std::string_view protocol, std::string_view id_1,
                              std::string_view id_2, const Transcript& transcript, const std::vector<Value>& secret,
                              ByteView context = {});

}  // namespace idka::protocol
