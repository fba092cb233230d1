// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "idka/backend/bytes.hpp"

#include <array>
#include <string_view>

namespace idka
{

inline constexpr std::string_view hash_name = "sha256";

using Digest = std::array<std::uint8_t, 32>;

Digest sha256(ByteView data);

/// Counter-mode expansion: SHA-256(tag || be32(i) || data) for i = 0, 1, ...
Bytes expand_hash(std::string_view tag, ByteView data, std::size_t length);

}  // namespace idka
