// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace idka
{

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

std::string to_hex(ByteView data);

/// Accepts upper or lower case; throws std::invalid_argument on odd length or non-hex digits.
Bytes from_hex(std::string_view hex);

Bytes to_bytes(std::string_view s);

/// Fixed-width big-endian; throws std::length_error if the value does not fit.
Bytes int_to_bytes(const mpz_class& value, std::size_t width);

mpz_class int_from_bytes(ByteView data);

std::size_t byte_width(const mpz_class& modulus);

/// Lowercase hex without prefix (the parameter- and key-file integer format).
std::string int_to_hex(const mpz_class& value);
mpz_class int_from_hex(std::string_view hex);

void append(Bytes& out, ByteView data);

/// 4-byte big-endian length followed by the data.
void append_framed(Bytes& out, ByteView data);

}  // namespace idka
